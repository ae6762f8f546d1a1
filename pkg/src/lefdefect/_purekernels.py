"""Pure-Python search kernels for the effective-class scan.

Same contract as the compiled extension in `_kernels`: enumerate candidate
coefficient vectors over the NS basis, keep the positive-semidefinite ones,
and compute the cup-product kernel dimension for each survivor.  Python
integers are arbitrary precision, so this path has no overflow bookkeeping;
it is the reference the compiled kernel is benchmarked and tested against.

Number-field tori take the `*_field` variants, where the symmetric parts
have algebraic entries and signs go through exact interval refinement.
"""

from __future__ import annotations

from itertools import combinations

from .exactmath import nf_sign


def det_int(rows) -> int:
    """Determinant of a small integer matrix by fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for c in range(n - 1):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) // prev
            m[i][c] = 0
        prev = m[c][c]
    return sign * m[n - 1][n - 1]


def rank_int(rows) -> int:
    """Rank of an integer matrix (row list is copied)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            # every row below rescales, even with a zero leading entry:
            # entries must stay the minors Sylvester's identity divides
            f = m[i][c]
            mi, mr = m[i], m[r]
            for j in range(c + 1, ncols):
                mi[j] = (p * mi[j] - f * mr[j]) // prev
            mi[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def subsets_by_size(n: int):
    return [list(combinations(range(n), size)) for size in range(1, n + 1)]


def psd_int(S, subset_table) -> bool:
    """All principal minors nonnegative, sizes ascending with early exit."""
    for size_subsets in subset_table:
        for subset in size_subsets:
            sub = [[S[i][j] for j in subset] for i in subset]
            if det_int(sub) < 0:
                return False
    return True


def _det_field(rows, zero):
    """Determinant over the number field by Gaussian elimination."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = None
    sign = 1
    for c in range(n):
        pivot = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
        if pivot is None:
            return zero
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        p = m[c][c]
        det = p if det is None else det * p
        inv = p.inverse()
        for i in range(c + 1, n):
            if not m[i][c].is_zero():
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det if sign == 1 else -det


def psd_field(S, subset_table, zero) -> bool:
    for size_subsets in subset_table:
        for subset in size_subsets:
            sub = [[S[i][j] for j in subset] for i in subset]
            if nf_sign(_det_field(sub, zero)) < 0:
                return False
    return True


class IntSearch:
    """Scan state for a torus whose symmetric parts are integer matrices."""

    def __init__(self, s_basis, w_pairs, rho, N, m4):
        self.s_basis = s_basis  # rho matrices, N x N ints
        self.w_pairs = w_pairs  # rho x rho vectors of length m4
        self.rho = rho
        self.N = N
        self.m4 = m4
        self.subset_table = subsets_by_size(N)

    def evaluate(self, coeffs):
        """(is_effective, defect, form_rank) for one coefficient vector."""
        rho, N = self.rho, self.N
        s_basis = self.s_basis
        # Diagonal first: a negative diagonal entry settles it immediately.
        diag = []
        for k in range(N):
            v = 0
            for i in range(rho):
                ci = coeffs[i]
                if ci:
                    v += ci * s_basis[i][k][k]
            if v < 0:
                return False, -1, -1
            diag.append(v)
        S = [[0] * N for _ in range(N)]
        for i in range(rho):
            ci = coeffs[i]
            if ci == 0:
                continue
            bi = s_basis[i]
            for r in range(N):
                br = bi[r]
                Sr = S[r]
                for c in range(N):
                    Sr[c] += ci * br[c]
        for size_subsets in self.subset_table[1:]:
            for subset in size_subsets:
                sub = [[S[i][j] for j in subset] for i in subset]
                if det_int(sub) < 0:
                    return False, -1, -1
        rows = []
        for j in range(rho):
            acc = [0] * self.m4
            for i in range(rho):
                ci = coeffs[i]
                if ci == 0:
                    continue
                wij = self.w_pairs[i][j]
                for t in range(self.m4):
                    acc[t] += ci * wij[t]
            rows.append(acc)
        defect = rho - rank_int(rows)
        return True, defect, rank_int(S)


class FieldSearch:
    """Scan state when the symmetric parts have number-field entries."""

    def __init__(self, s_basis_field, e_basis_int, w_pairs, rho, N, m4, field):
        self.s_basis = s_basis_field  # rho matrices of AlgebraicReal
        self.e_basis = e_basis_int  # integer form matrices, for the rank
        self.w_pairs = w_pairs
        self.rho = rho
        self.N = N
        self.m4 = m4
        self.field = field
        self.subset_table = subsets_by_size(N)

    def evaluate(self, coeffs):
        rho, N = self.rho, self.N
        zero = self.field.zero()
        diag = []
        for k in range(N):
            v = zero
            for i in range(rho):
                ci = coeffs[i]
                if ci:
                    v = v + ci * self.s_basis[i][k][k]
            if nf_sign(v) < 0:
                return False, -1, -1
            diag.append(v)
        S = [[zero] * N for _ in range(N)]
        for i in range(rho):
            ci = coeffs[i]
            if ci == 0:
                continue
            bi = self.s_basis[i]
            for r in range(N):
                for c in range(N):
                    S[r][c] = S[r][c] + ci * bi[r][c]
        if not psd_field(S, self.subset_table[1:], zero):
            return False, -1, -1
        rows = []
        for j in range(rho):
            acc = [0] * self.m4
            for i in range(rho):
                ci = coeffs[i]
                if ci == 0:
                    continue
                wij = self.w_pairs[i][j]
                for t in range(self.m4):
                    acc[t] += ci * wij[t]
            rows.append(acc)
        defect = rho - rank_int(rows)
        E = [[0] * N for _ in range(N)]
        for i in range(rho):
            ci = coeffs[i]
            if ci == 0:
                continue
            bi = self.e_basis[i]
            for r in range(N):
                for c in range(N):
                    E[r][c] += ci * bi[r][c]
        return True, defect, rank_int(E)


def scan_range(search, box: int, start: int, stop: int, collect: bool):
    """Evaluate candidates with enumeration index in [start, stop).

    Candidates are the mixed-radix digit vectors in base (2*box + 1), shifted
    to [-box, box]; the all-zero vector is skipped.  Returns
    (best_delta, best_position, scanned, records) where records hold
    (position, coeffs, defect, form_rank) for effective classes when
    `collect` is set.
    """
    rho = search.rho
    base = 2 * box + 1
    zero_index = (base**rho - 1) // 2
    digits = []
    idx = start
    for _ in range(rho):
        digits.append(idx % base)
        idx //= base
    digits.reverse()
    coeffs = [d - box for d in digits]
    best_delta = -1
    best_pos = -1
    scanned = 0
    records = []
    pos = start
    while pos < stop:
        if pos != zero_index:
            scanned += 1
            effective, defect, form_rank = search.evaluate(coeffs)
            if effective:
                if defect > best_delta:
                    best_delta = defect
                    best_pos = pos
                if collect:
                    records.append((pos, tuple(coeffs), defect, form_rank))
        pos += 1
        if pos >= stop:
            break
        for k in range(rho - 1, -1, -1):
            if digits[k] + 1 < base:
                digits[k] += 1
                coeffs[k] += 1
                break
            digits[k] = 0
            coeffs[k] = -box
    return best_delta, best_pos, scanned, records


def scan_vectors(search, vectors, base_position: int, collect: bool):
    """Evaluate an explicit list of coefficient vectors (structured extras)."""
    best_delta = -1
    best_pos = -1
    scanned = 0
    records = []
    for offset, coeffs in enumerate(vectors):
        scanned += 1
        effective, defect, form_rank = search.evaluate(list(coeffs))
        if effective:
            pos = base_position + offset
            if defect > best_delta:
                best_delta = defect
                best_pos = pos
            if collect:
                records.append((pos, tuple(coeffs), defect, form_rank))
    return best_delta, best_pos, scanned, records
