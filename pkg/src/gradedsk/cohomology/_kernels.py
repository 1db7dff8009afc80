"""Integer lattice kernels for the finite-module cohomology engine.

All lattices handled here live in Z^N, contain diag(mods) * Z^N (mods[i]
divides a common exponent e <= 2^16), and are manipulated with row
operations only.  Because the axis vectors mods[i]*e_i always belong to
the lattice, every entry can be reduced into [0, mods[i]) at any time, so
the arithmetic stays far below int64 limits.

Row operations are written as numpy slice expressions, which both
backends vectorize; the two helpers `_dot_rows` and `_argmin_nonzero`
get backend-specific bindings (loop bodies under numba, matmul/argmin
under numpy) in backend.py.  The loop-style reference helpers below keep
this module importable and correct on its own.
"""

import numpy as np


def _ext_gcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _dot_rows(mat, vec):
    """mat @ vec for int64 arrays (loop form; rebound per backend)."""
    R, N = mat.shape
    out = np.zeros(R, dtype=np.int64)
    for r in range(R):
        acc = np.int64(0)
        for j in range(N):
            acc += mat[r, j] * vec[j]
        out[r] = acc
    return out


def _argmin_nonzero(vec):
    """Index of the smallest nonzero entry, or -1 (rebound per backend)."""
    best = -1
    bval = np.int64(0)
    for i in range(vec.shape[0]):
        v = vec[i]
        if v != 0 and (best == -1 or v < bval):
            best = i
            bval = v
    return best


def hermite_mod(rows, mods):
    """Upper-triangular basis of span(rows) + diag(mods), entries reduced.

    rows: (R, N) int64, mods: (N,) int64 with mods[i] >= 1.
    Returns (N, N) int64 upper triangular with positive diagonal.
    """
    N = mods.shape[0]
    R = rows.shape[0]
    work = np.zeros((R + N, N), dtype=np.int64)
    work[:R] = rows % mods
    for i in range(N):
        work[R + i, i] = mods[i]
    basis = np.zeros((N, N), dtype=np.int64)
    nrows = R + N
    start = 0  # rows before `start` are exhausted
    for col in range(N):
        while True:
            piv_off = _argmin_nonzero(work[start:nrows, col])
            if piv_off == -1:
                break
            piv = start + piv_off
            pval = work[piv, col]
            others = False
            for r in range(start, nrows):
                if r != piv and work[r, col] != 0:
                    others = True
                    q = work[r, col] // pval
                    work[r, col:] = (work[r, col:] - q * work[piv, col:]) % mods[col:]
            if not others:
                if piv != start:
                    tmp = work[start].copy()
                    work[start] = work[piv]
                    work[piv] = tmp
                basis[col] = work[start]
                start += 1
                break
    # columns whose modulus is 1 lose their axis pivot to reduction
    for i in range(N):
        if basis[i, i] == 0:
            basis[i, i] = mods[i]
    # canonical form: entries above each pivot reduced mod the pivot
    for i in range(N):
        for k in range(i):
            q = basis[k, i] // basis[i, i]
            if q != 0:
                basis[k, i:] = (basis[k, i:] - q * basis[i, i:]) % mods[i:]
    return basis


def lattice_contains(basis, mods, vec):
    """Membership of vec in the lattice with triangular basis (mod diag)."""
    N = mods.shape[0]
    x = vec % mods
    for c in range(N):
        if x[c] % basis[c, c] != 0:
            return False
        q = x[c] // basis[c, c]
        if q != 0:
            x[c:] = (x[c:] - q * basis[c, c:]) % mods[c:]
    for j in range(N):
        if x[j] != 0:
            return False
    return True


def kernel_mod(congs, cmods, src_mods):
    """Basis of {x in Z^N : x . congs[c] == 0 mod cmods[c] for all c}.

    The solution lattice always contains diag(src_mods); entries stay
    reduced below the source moduli throughout.
    """
    N = src_mods.shape[0]
    C = congs.shape[0]
    basis = np.zeros((N, N), dtype=np.int64)
    for i in range(N):
        basis[i, i] = 1
    for c in range(C):
        d = cmods[c]
        if d == 1:
            continue
        vals = _dot_rows(basis, congs[c]) % d
        piv = _argmin_nonzero(vals)
        if piv == -1:
            continue
        while True:
            pval = vals[piv]
            others = False
            for r in range(N):
                if r != piv and vals[r] != 0:
                    others = True
                    q = vals[r] // pval
                    basis[r] = (basis[r] - q * basis[piv]) % src_mods
                    vals[r] = vals[r] - q * pval
            if not others:
                break
            piv = _argmin_nonzero(vals)
        g, _, _ = _ext_gcd(pval, d)
        scale = d // g
        basis[piv] = (basis[piv] * scale) % src_mods
    return hermite_mod(basis, src_mods)


def snf_mod(rel, e):
    """Smith form of the relation rows of a quotient with exponent | e.

    Working mod e quotients by e*Z^N, which lies in the relation lattice.
    Returns (diag (N,), V (N, N), Vinv (N, N)) with all entries mod e,
    diag[i] | e, and the divisibility chain enforced.
    """
    N = rel.shape[1]
    R = rel.shape[0]
    mat = rel % e
    V = np.zeros((N, N), dtype=np.int64)
    Vinv = np.zeros((N, N), dtype=np.int64)
    for i in range(N):
        V[i, i] = 1
        Vinv[i, i] = 1
    M = R
    t = 0
    while t < N:
        piv_r = -1
        piv_c = -1
        pval = np.int64(0)
        for i in range(t, M):
            j = _argmin_nonzero(mat[i, t:])
            if j != -1:
                v = mat[i, t + j]
                if piv_r == -1 or v < pval:
                    piv_r, piv_c, pval = i, t + j, v
        if piv_r == -1:
            break
        if piv_r != t:
            tmp = mat[t].copy()
            mat[t] = mat[piv_r]
            mat[piv_r] = tmp
        if piv_c != t:
            tmp = mat[:, t].copy()
            mat[:, t] = mat[:, piv_c]
            mat[:, piv_c] = tmp
            tmp = V[:, t].copy()
            V[:, t] = V[:, piv_c]
            V[:, piv_c] = tmp
            tmp = Vinv[t].copy()
            Vinv[t] = Vinv[piv_c]
            Vinv[piv_c] = tmp
        stable = False
        while not stable:
            stable = True
            for i in range(t + 1, M):
                if mat[i, t] != 0:
                    q = mat[i, t] // mat[t, t]
                    mat[i, t:] = (mat[i, t:] - q * mat[t, t:]) % e
                    if mat[i, t] != 0:
                        tmp = mat[t].copy()
                        mat[t] = mat[i]
                        mat[i] = tmp
                        stable = False
            for j in range(t + 1, N):
                if mat[t, j] != 0:
                    q = mat[t, j] // mat[t, t]
                    mat[:, j] = (mat[:, j] - q * mat[:, t]) % e
                    V[:, j] = (V[:, j] - q * V[:, t]) % e
                    Vinv[t] = (Vinv[t] + q * Vinv[j]) % e
                    if mat[t, j] != 0:
                        tmp = mat[:, t].copy()
                        mat[:, t] = mat[:, j]
                        mat[:, j] = tmp
                        tmp = V[:, t].copy()
                        V[:, t] = V[:, j]
                        V[:, j] = tmp
                        tmp = Vinv[t].copy()
                        Vinv[t] = Vinv[j]
                        Vinv[j] = tmp
                        stable = False
        t += 1
    diag = np.zeros(N, dtype=np.int64)
    for i in range(N):
        g, _, _ = _ext_gcd(mat[i, i] % e if i < M else 0, e)
        diag[i] = g
    # divisibility chain via 2x2 diagonal fixes tracked on V / Vinv
    for i in range(N):
        for j in range(i + 1, N):
            a = diag[i]
            b = diag[j]
            if b % a == 0:
                continue
            g, x, y = _ext_gcd(a, b)
            lc = (a * b) // g
            bi = b // g
            bj = a // g
            vi = V[:, i].copy()
            vj = V[:, j].copy()
            V[:, i] = (x * vi + y * vj) % e
            V[:, j] = (-bi * vi + bj * vj) % e
            wi = Vinv[i].copy()
            wj = Vinv[j].copy()
            Vinv[i] = (bj * wi + bi * wj) % e
            Vinv[j] = (-y * wi + x * wj) % e
            diag[i] = g
            diag[j] = lc % e
            if diag[j] == 0:
                diag[j] = e
    for i in range(N):
        if diag[i] == 0:
            diag[i] = e
    return diag, V, Vinv


def closure_subgroup(gens, mods, cap):
    """All elements of the subgroup generated by gens (brute BFS).

    Returns (count, elems) with elems a (cap, N) buffer filled up to count;
    count = -1 signals overflow.
    """
    N = mods.shape[0]
    strides = np.zeros(N, dtype=np.int64)
    total = 1
    for j in range(N):
        strides[j] = total
        total *= mods[j]
    seen = np.zeros(total, dtype=np.uint8)
    elems = np.zeros((cap, N), dtype=np.int64)
    scratch = np.zeros(N, dtype=np.int64)
    count = 1
    seen[0] = 1
    head = 0
    G = gens.shape[0]
    while head < count:
        for g in range(G):
            key = np.int64(0)
            for j in range(N):
                v = (elems[head, j] + gens[g, j]) % mods[j]
                scratch[j] = v
                key += v * strides[j]
            if seen[key] == 0:
                if count >= cap:
                    return -1, elems
                seen[key] = 1
                elems[count] = scratch
                count += 1
        head += 1
    return count, elems


def ravel_elements(elems, mods):
    n = elems.shape[0]
    N = mods.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        key = np.int64(0)
        stride = np.int64(1)
        for j in range(N):
            key += (elems[i, j] % mods[j]) * stride
            stride *= mods[j]
        out[i] = key
    return out


def min_coset_keys(elems, sub, mods):
    """Canonical (minimum ravel key) representative per coset elem + sub."""
    K = elems.shape[0]
    S = sub.shape[0]
    N = mods.shape[0]
    strides = np.zeros(N, dtype=np.int64)
    total = np.int64(1)
    for j in range(N):
        strides[j] = total
        total *= mods[j]
    out = np.zeros(K, dtype=np.int64)
    for i in range(K):
        best = total
        for s in range(S):
            key = np.int64(0)
            for j in range(N):
                key += ((elems[i, j] + sub[s, j]) % mods[j]) * strides[j]
            if key < best:
                best = key
        out[i] = best
    return out
