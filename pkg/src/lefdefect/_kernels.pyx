# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loop of the effective-class scan.

Mirrors the contract of `_purekernels.scan_range` for tori whose symmetric
parts are integer matrices.  Entries are kept below 2^61; every product runs
through 128-bit intermediates, and any candidate whose elimination would
store a larger value is re-evaluated exactly through the supplied
pure-Python search object, so results are identical to the fallback.
"""

from libc.stdlib cimport free, malloc

ctypedef long long i64

cdef extern from *:
    ctypedef long long i128 "__int128"

cdef i64 LIMIT = (<i64>1) << 61


cdef int _rank_echelon(i64* m, int nrows, int ncols, int* overflow) nogil:
    """Fraction-free echelon rank; flags overflow instead of storing big values."""
    cdef int r = 0, c, i, j, pivot
    cdef i64 prev = 1, p, f, q
    cdef i128 num
    for c in range(ncols):
        pivot = -1
        for i in range(r, nrows):
            if m[i * ncols + c] != 0:
                pivot = i
                break
        if pivot < 0:
            continue
        if pivot != r:
            for j in range(ncols):
                p = m[r * ncols + j]
                m[r * ncols + j] = m[pivot * ncols + j]
                m[pivot * ncols + j] = p
        p = m[r * ncols + c]
        for i in range(r + 1, nrows):
            # rescale every row below the pivot, zero leading entry included
            f = m[i * ncols + c]
            for j in range(c + 1, ncols):
                num = <i128>p * m[i * ncols + j] - <i128>f * m[r * ncols + j]
                num = num / prev
                if num > LIMIT or num < -LIMIT:
                    overflow[0] = 1
                    return -1
                m[i * ncols + j] = <i64>num
            m[i * ncols + c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


cdef i64 _det(i64* m, int n, int* overflow) nogil:
    cdef int sign = 1, c, i, j, pivot
    cdef i64 prev = 1, p, f
    cdef i128 num
    if n == 0:
        return 1
    for c in range(n - 1):
        pivot = -1
        for i in range(c, n):
            if m[i * n + c] != 0:
                pivot = i
                break
        if pivot < 0:
            return 0
        if pivot != c:
            for j in range(n):
                p = m[c * n + j]
                m[c * n + j] = m[pivot * n + j]
                m[pivot * n + j] = p
            sign = -sign
        p = m[c * n + c]
        for i in range(c + 1, n):
            f = m[i * n + c]
            for j in range(c + 1, n):
                num = <i128>p * m[i * n + j] - <i128>f * m[c * n + j]
                num = num / prev
                if num > LIMIT or num < -LIMIT:
                    overflow[0] = 1
                    return 0
                m[i * n + j] = <i64>num
            m[i * n + c] = 0
        prev = p
    return sign * m[(n - 1) * n + (n - 1)]


cdef int _eval(i64* s_basis, i64* w_pairs, i64* masks, int nmasks,
               int rho, int N, int m4, i64* coeffs,
               i64* S, i64* scratch, i64* M,
               int want_rank, int* defect, int* form_rank) nogil:
    """0 = not effective, 1 = effective, 2 = overflow (needs exact retry)."""
    cdef int i, r, c, j, t, k, size, overflow = 0
    cdef i64 ci, mask, d
    cdef i64* base
    # Symmetric part of the candidate class.
    for r in range(N * N):
        S[r] = 0
    for i in range(rho):
        ci = coeffs[i]
        if ci == 0:
            continue
        base = s_basis + i * N * N
        for r in range(N * N):
            S[r] += ci * base[r]
    # Diagonal, then all principal minors by ascending size.
    for r in range(N):
        if S[r * N + r] < 0:
            return 0
    for k in range(nmasks):
        mask = masks[k]
        size = 0
        for r in range(N):
            if mask & ((<i64>1) << r):
                size += 1
        if size < 2:
            continue
        j = 0
        for r in range(N):
            if not (mask & ((<i64>1) << r)):
                continue
            t = 0
            for c in range(N):
                if mask & ((<i64>1) << c):
                    scratch[j * size + t] = S[r * N + c]
                    t += 1
            j += 1
        d = _det(scratch, size, &overflow)
        if overflow:
            return 2
        if d < 0:
            return 0
    # Cup-product kernel dimension on the NS subspace.
    for j in range(rho):
        for t in range(m4):
            M[j * m4 + t] = 0
        for i in range(rho):
            ci = coeffs[i]
            if ci == 0:
                continue
            base = w_pairs + (i * rho + j) * m4
            for t in range(m4):
                M[j * m4 + t] += ci * base[t]
    r = _rank_echelon(M, rho, m4, &overflow)
    if overflow:
        return 2
    defect[0] = rho - r
    if want_rank:
        for r in range(N * N):
            scratch[r] = S[r]
        c = _rank_echelon(scratch, N, N, &overflow)
        if overflow:
            return 2
        form_rank[0] = c
    return 1


cdef class _Workspace:
    cdef i64* s_basis
    cdef i64* w_pairs
    cdef i64* masks
    cdef i64* S
    cdef i64* scratch
    cdef i64* M
    cdef i64* coeffs
    cdef i64* digits
    cdef int nmasks

    def __cinit__(self, s_int, w_pairs_py, int rho, int N, int m4):
        cdef int i, r, c, j, t
        self.s_basis = <i64*>malloc(rho * N * N * sizeof(i64))
        self.w_pairs = <i64*>malloc(rho * rho * m4 * sizeof(i64))
        self.S = <i64*>malloc(N * N * sizeof(i64))
        self.scratch = <i64*>malloc(max(N * N, 1) * sizeof(i64))
        self.M = <i64*>malloc(max(rho * m4, 1) * sizeof(i64))
        self.coeffs = <i64*>malloc(rho * sizeof(i64))
        self.digits = <i64*>malloc(rho * sizeof(i64))
        for i in range(rho):
            for r in range(N):
                for c in range(N):
                    self.s_basis[i * N * N + r * N + c] = s_int[i][r][c]
        for i in range(rho):
            for j in range(rho):
                for t in range(m4):
                    self.w_pairs[(i * rho + j) * m4 + t] = w_pairs_py[i][j][t]
        # Principal-minor masks of size >= 2, sorted by population count so
        # early exits happen on the cheap small minors.
        masks = sorted(
            (m for m in range(1, 1 << N) if bin(m).count("1") >= 2),
            key=lambda m: (bin(m).count("1"), m),
        )
        self.nmasks = len(masks)
        self.masks = <i64*>malloc(max(self.nmasks, 1) * sizeof(i64))
        for i, m in enumerate(masks):
            self.masks[i] = m

    def __dealloc__(self):
        free(self.s_basis)
        free(self.w_pairs)
        free(self.masks)
        free(self.S)
        free(self.scratch)
        free(self.M)
        free(self.coeffs)
        free(self.digits)


def scan_range(s_int, w_pairs, int rho, int N, int m4,
               int box, start_py, stop_py, bint collect, fallback):
    """Drop-in twin of `_purekernels.scan_range` for integer search data."""
    cdef _Workspace ws = _Workspace(s_int, w_pairs, rho, N, m4)
    cdef i64 start = start_py, stop = stop_py
    cdef i64 base = 2 * box + 1
    cdef i64 zero_index = 0
    cdef int k
    for k in range(rho):
        zero_index = zero_index * base + box
    cdef i64 pos = start, idx = start
    for k in range(rho - 1, -1, -1):
        ws.digits[k] = idx % base
        idx //= base
    for k in range(rho):
        ws.coeffs[k] = ws.digits[k] - box
    cdef int best_delta = -1
    cdef i64 best_pos = -1
    cdef i64 scanned = 0
    cdef int status = 0, defect = 0, form_rank = 0
    cdef int want_rank = 1 if collect else 0
    records = []
    with nogil:
        while pos < stop:
            if pos != zero_index:
                scanned += 1
                status = _eval(ws.s_basis, ws.w_pairs, ws.masks, ws.nmasks,
                               rho, N, m4, ws.coeffs, ws.S, ws.scratch, ws.M,
                               want_rank, &defect, &form_rank)
                if status == 2:
                    with gil:
                        coeff_list = [ws.coeffs[k] for k in range(rho)]
                        eff, exact_defect, exact_rank = fallback.evaluate(coeff_list)
                        if eff:
                            status = 1
                            defect = exact_defect
                            form_rank = exact_rank
                        else:
                            status = 0
                if status == 1:
                    if defect > best_delta:
                        best_delta = defect
                        best_pos = pos
                    if collect:
                        with gil:
                            records.append(
                                (pos, tuple(ws.coeffs[k] for k in range(rho)),
                                 defect, form_rank)
                            )
            pos += 1
            if pos >= stop:
                break
            for k in range(rho - 1, -1, -1):
                if ws.digits[k] + 1 < base:
                    ws.digits[k] += 1
                    ws.coeffs[k] += 1
                    break
                ws.digits[k] = 0
                ws.coeffs[k] = -box
    return best_delta, (best_pos if best_pos >= 0 else -1), scanned, records
