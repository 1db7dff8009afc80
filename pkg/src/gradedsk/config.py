"""Line-oriented sectioned instance configuration.

Exact-rational literals (`3/2`), field-element literals as coefficient
tuples over the flattened tower basis (`(1, 0, 1/2)`), homogeneous
coefficients as `value @ (d1, d2)`, and `name` / `-name` sugar for signed
generators.  JSON is emitted for reports, never ingested.  Parse errors
carry line numbers.
"""

from __future__ import annotations

import re

import numpy as np

from .crossedproduct import CrossedProductData, Homog
from .involution import build_involution
from .numberfield import FieldAutomorphism, FieldTower
from .rational import QQ, qq


class ConfigError(ValueError):
    def __init__(self, msg, line_no=None):
        if line_no is not None:
            msg = "line %d: %s" % (line_no, msg)
        super().__init__(msg)
        self.line_no = line_no


class Section:
    def __init__(self, name, line_no):
        self.name = name
        self.line_no = line_no
        self.entries = []  # (key, value, line_no)

    def get(self, key, default=None):
        for k, v, _ in self.entries:
            if k == key:
                return v
        return default

    def get_all(self, key):
        return [(v, ln) for k, v, ln in self.entries if k == key]

    def require(self, key):
        v = self.get(key)
        if v is None:
            raise ConfigError("missing %r in [%s]" % (key, self.name), self.line_no)
        return v


def parse_sections(text: str):
    sections = []
    current = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = Section(line[1:-1].strip(), ln)
            sections.append(current)
            continue
        if current is None:
            raise ConfigError("entry before any section", ln)
        if "->" in line:
            key, val = line.split("->", 1)
            current.entries.append(("->" + key.strip(), val.strip(), ln))
        elif "=" in line:
            key, val = line.split("=", 1)
            current.entries.append((key.strip(), val.strip(), ln))
        else:
            raise ConfigError("expected 'key = value' or 'gen -> value'", ln)
    return sections


def _split_top_level(text: str, sep: str = ","):
    parts = []
    depth = 0
    cur = ""
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur.strip())
    return parts


def parse_element(tower: FieldTower, text: str, line_no=None):
    text = text.strip()
    if text.startswith("("):
        if not text.endswith(")"):
            raise ConfigError("unterminated coefficient tuple", line_no)
        coeffs = [qq(p) for p in _split_top_level(text[1:-1])]
        if len(coeffs) != tower.degree:
            raise ConfigError(
                "expected %d coefficients, got %d" % (tower.degree, len(coeffs)),
                line_no,
            )
        return tower.from_coeffs(coeffs)
    neg = text.startswith("-") and not text[1:].lstrip()[0:1].isdigit()
    name = text[1:].strip() if neg else text
    if name in tower.names:
        g = tower.gen(name)
        return -g if neg else g
    try:
        return tower.from_rational(qq(text))
    except (ValueError, ZeroDivisionError):
        raise ConfigError("cannot parse element literal %r" % text, line_no)


def parse_degrees(text: str, rank: int, line_no=None):
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ConfigError("degree literal must be a tuple", line_no)
    parts = [qq(p) for p in _split_top_level(text[1:-1])]
    if len(parts) != rank:
        raise ConfigError("degree rank mismatch", line_no)
    return tuple(parts)


def parse_homog(tower: FieldTower, rank: int, text: str, line_no=None) -> Homog:
    if "@" in text:
        val, deg = text.split("@", 1)
        return Homog(parse_element(tower, val, line_no),
                     parse_degrees(deg, rank, line_no))
    return Homog(parse_element(tower, text, line_no), (QQ(0),) * rank)


def parse_int_matrix(text: str, line_no=None) -> np.ndarray:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ConfigError("matrix literal must be [[..], [..]]", line_no)
    rows = []
    for rtxt in _split_top_level(text[1:-1]):
        rtxt = rtxt.strip()
        if not (rtxt.startswith("[") and rtxt.endswith("]")):
            raise ConfigError("matrix row must be [..]", line_no)
        rows.append([int(p) for p in _split_top_level(rtxt[1:-1])])
    return np.array(rows, dtype=np.int64)


class InstanceConfig:
    """Resolved configuration: tower, automorphisms, data, modules."""

    def __init__(self, text: str):
        self.sections = parse_sections(text)
        self.tower = None
        self.base_level = 0
        self.rank = 0
        self.laurent_names = []
        self.automorphisms = {}
        self.data = None
        self.theta = None
        self.modules = {}
        self.pipeline = []
        self.seed = 0
        self.bounds = {}
        self._build()

    def _section(self, name):
        for s in self.sections:
            if s.name == name:
                return s
        return None

    def _sections_prefixed(self, prefix):
        return [s for s in self.sections if s.name.startswith(prefix)]

    def _build(self):
        tow = self._section("tower")
        if tow is not None:
            t = FieldTower.rationals()
            for val, ln in tow.get_all("step"):
                m = re.match(r"(\w+)\s*:\s*(.*)$", val)
                if not m:
                    raise ConfigError("step syntax: 'step = name : c0, c1, ...'", ln)
                coeffs = [qq(p) for p in _split_top_level(m.group(2))]
                try:
                    t = t.extend(m.group(1), coeffs)
                except Exception as exc:
                    raise ConfigError(str(exc), ln)
            self.tower = t
            self.base_level = int(tow.get("base_level", "0"))
        grading = self._section("grading")
        if grading is not None:
            self.rank = int(grading.require("rank"))
            names = grading.get("names")
            self.laurent_names = (
                [n.strip() for n in names.split(",")] if names else None
            )
        for s in self._sections_prefixed("automorphism "):
            name = s.name.split(None, 1)[1]
            images = []
            img_by_gen = {}
            for key, val, ln in s.entries:
                if key.startswith("->"):
                    img_by_gen[key[2:].strip()] = (val, ln)
            for gname in self.tower.names:
                if gname not in img_by_gen:
                    raise ConfigError(
                        "automorphism %s misses generator %s" % (name, gname),
                        s.line_no,
                    )
                val, ln = img_by_gen[gname]
                images.append(parse_element(self.tower, val, ln))
            self.automorphisms[name] = FieldAutomorphism(self.tower, images)
        cp = self._section("crossed_product")
        if cp is not None:
            gens = [
                self.automorphisms[n.strip()]
                for n in cp.require("generators").split(",")
            ]
            orders = [int(n) for n in cp.require("orders").split(",")]
            k = len(gens)
            one = Homog(self.tower.one(), (QQ(0),) * self.rank)
            u = [[one for _ in range(k)] for _ in range(k)]
            b = [None] * k
            for key, val, ln in cp.entries:
                mu = re.match(r"u\s+(\d+)\s+(\d+)$", key)
                mb = re.match(r"b\s+(\d+)$", key)
                if mu:
                    i, j = int(mu.group(1)), int(mu.group(2))
                    h = parse_homog(self.tower, self.rank, val, ln)
                    u[i][j] = h
                    u[j][i] = h.inverse()
                elif mb:
                    b[int(mb.group(1))] = parse_homog(self.tower, self.rank, val, ln)
            if any(x is None for x in b):
                raise ConfigError("every power b i must be given", cp.line_no)
            self.data = CrossedProductData(
                self.tower, self.base_level, gens, orders, u, b,
                rank=self.rank, laurent_names=self.laurent_names,
            )
        inv = self._section("involution")
        if inv is not None:
            self.theta = self.automorphisms[inv.require("restriction")]
        for s in self._sections_prefixed("module "):
            self.modules[s.name.split(None, 1)[1]] = self._build_module(s)
        pipe = self._section("pipeline")
        if pipe is not None:
            runs = pipe.get("run", "")
            self.pipeline = [p.strip() for p in runs.split(",") if p.strip()]
        opts = self._section("options")
        if opts is not None:
            self.seed = int(opts.get("seed", "0"))
            for key, val, _ in opts.entries:
                if key.startswith("bound_"):
                    self.bounds[key] = int(val)

    def _build_module(self, s: Section):
        from .cohomology.finab import FinAb
        from .cohomology.groups import FiniteGroup
        from .cohomology.module import FiniteGModule

        spec = s.require("group").split()
        kind = spec[0]
        orders = [int(x) for x in spec[1:]]
        if kind == "abelian":
            group = FiniteGroup.abelian(orders)
        elif kind == "dihedral":
            group = FiniteGroup.dihedral(orders[0])
        elif kind == "gendihedral":
            group = FiniteGroup.generalized_dihedral(orders)
        else:
            raise ConfigError("unknown group kind %r" % kind, s.line_no)
        mods = [int(x) for x in s.require("mods").split(",")]
        gen_actions = {}
        for key, val, ln in s.entries:
            m = re.match(r"action\s+(\w+)$", key)
            if m:
                gen_actions[m.group(1)] = parse_int_matrix(val, ln)
        return FiniteGModule(group, FinAb(mods), gen_actions=gen_actions)
