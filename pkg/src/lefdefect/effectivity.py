"""Positivity analysis of divisor classes and the brute-force global defect.

A Neron-Severi class is effective (up to a positive multiple) exactly when
its symmetric part S(x, y) = E(x, Jy) is positive semidefinite and nonzero:
an effective divisor is pulled back from a polarization on the quotient by
its radical, and conversely a semidefinite class descends to a polarization
there.  Semidefiniteness is decided by the signs of all principal minors;
leading minors alone would miss the degenerate boundary classes, which are
precisely the interesting ones here.

`torus_defect` maximizes the cup-product kernel dimension over all effective
integer classes in a coefficient box over the NS basis, plus a structured
candidate set (Poincare duals of coordinate-factor sublattices and pullbacks
of quotient polarizations) that is scanned regardless of the box.  The box
enumeration is partitionable: chunks are scanned independently and combined
by an associative max, so DEFECT_THREADS-style parallel splits cannot change
the answer.

The inner loop is served by a compiled kernel when the extension built; a
pure-Python twin with the identical contract is selected as fallback at
import time (or when entries outgrow the compiled kernel's integer range).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Optional

from . import _purekernels
from .cohomology import class_of_form, poincare_dual, wedge, wedge_basis
from .errors import ConsistencyError, NotHodgeClass
from .exactmath import (
    KMatrix,
    QMatrix,
    integer_kernel_basis,
    nf_sign,
    primitive_integer_vector,
)
from .torus import (
    AlternatingForm,
    ComplexTorus,
    Sublattice,
    coordinate_factor_sublattices,
    factor_blocks,
    hom_rank,
    ns_basis,
    ns_coordinates,
    ns_rank,
    quotient,
    subtorus,
)

if os.environ.get("LEFDEFECT_NO_EXT"):
    _kernels = None
else:
    try:
        from . import _kernels  # compiled extension, optional
    except ImportError:
        _kernels = None

HAVE_COMPILED_KERNELS = _kernels is not None

# Stored kernel entries stay below this; the compiled path falls back to
# exact arithmetic for any candidate that would exceed it.
_INT64_SAFE = 2**61


def symmetric_part(A: ComplexTorus, E: AlternatingForm) -> KMatrix:
    """The symmetric matrix S = E * J of a Neron-Severi class.

    S(x, y) = E(x, Jy) is symmetric precisely because E is J-compatible; on
    the square lattice with its principal polarization S is the identity.
    """
    if E.torus != A:
        raise ValueError("form belongs to a different torus")
    if not E.is_hodge:
        raise NotHodgeClass("form is not J-compatible")
    EK = KMatrix(A.field, E.matrix)
    S = EK * A.J
    for i in range(S.nrows):
        for j in range(i + 1, S.ncols):
            if S.rows[i][j] != S.rows[j][i]:
                raise ConsistencyError("symmetric part came out asymmetric")
    return S


def is_effective_class(A: ComplexTorus, E: AlternatingForm) -> bool:
    """Nonzero with positive-semidefinite symmetric part.

    Equivalent to some positive multiple of E being the class of an effective
    divisor; scaling never changes the defect, so this is the right
    effectivity notion for maximizing it.
    """
    if E.is_zero():
        return False
    S = symmetric_part(A, E)
    zero = A.field.zero()
    table = _purekernels.subsets_by_size(S.nrows)
    return _purekernels.psd_field(S.rows, table, zero)


def radical(A: ComplexTorus, E: AlternatingForm) -> Sublattice:
    """Saturation of the lattice vectors annihilated by an effective class.

    J-compatibility makes the radical J-stable (E(Jx, y) = E(x, -Jy) dies
    whenever E(x, .) does), so it is a complex subtorus of even rank.
    """
    if not is_effective_class(A, E):
        raise ValueError("class is not effective")
    kernel_cols = integer_kernel_basis(QMatrix(E.matrix))
    W = subtorus(A, kernel_cols)
    if W.rank % 2 != 0:
        raise ConsistencyError("radical has odd rank")
    return W


def iitaka_dimension(A: ComplexTorus, E: AlternatingForm) -> int:
    """Dimension of the abelian quotient attached to an effective class."""
    W = radical(A, E)
    b = A.n - W.rank // 2
    if b == 0:
        raise ConsistencyError("iitaka dimension 0 is impossible for a nonzero class")
    return b


def induced_quotient_class(A: ComplexTorus, E: AlternatingForm, W: Sublattice) -> AlternatingForm:
    """The nondegenerate class an effective E induces on quotient(A, W)."""
    S = W.section
    N = 2 * A.n
    m = len(S[0])
    rows = [
        [
            sum(Fraction(S[a][i]) * E.matrix[a][b] * S[b][j] for a in range(N) for b in range(N))
            for j in range(m)
        ]
        for i in range(m)
    ]
    return AlternatingForm(quotient(A, W), rows)


@dataclass(frozen=True)
class EffectivityReport:
    """Per-class positivity summary."""

    form: AlternatingForm
    is_effective: bool
    radical_rank: int
    iitaka_dim: Optional[int]
    quotient: Optional[ComplexTorus]


def effectivity_report(A: ComplexTorus, E: AlternatingForm) -> EffectivityReport:
    effective = is_effective_class(A, E)
    if not effective:
        rad_rank = 2 * A.n - _purekernels.rank_int(
            [[int(x * _common_den(E)) for x in row] for row in E.matrix]
        )
        return EffectivityReport(E, False, rad_rank, None, None)
    W = radical(A, E)
    b = A.n - W.rank // 2
    B = quotient(A, W) if W.rank < 2 * A.n else None
    return EffectivityReport(E, True, W.rank, b, B)


def _common_den(E: AlternatingForm) -> int:
    return lcm(*(x.denominator for row in E.matrix for x in row))


@dataclass(frozen=True)
class DefectSearchResult:
    """Outcome of the box search: a certified-from-below global defect."""

    delta: int
    witness: Optional[AlternatingForm]
    classes_scanned: int
    search_box: int
    witness_coefficients: Optional[tuple]


@dataclass(frozen=True)
class EffectiveClassRecord:
    """One effective candidate seen by the survey scan."""

    position: int
    coefficients: tuple
    defect: int
    form_rank: int


class _SearchData:
    """Precomputed integer data for scanning one torus."""

    def __init__(self, A: ComplexTorus):
        if A.n < 2:
            raise ValueError("global defect search needs dimension at least 2")
        self.torus = A
        self.basis = ns_basis(A)
        self.rho = len(self.basis)
        self.N = 2 * A.n
        self.m4 = len(wedge_basis(self.N, 4))
        self.e_int = [
            [[int(x) for x in row] for row in b.matrix] for b in self.basis
        ]
        # Cup products of basis pairs: integer coordinate vectors in H^4.
        classes = [class_of_form(b) for b in self.basis]
        self.w_pairs = [
            [[int(x) for x in wedge(ci, cj).coords] for cj in classes] for ci in classes
        ]
        self.rational_j = A.J.is_rational()
        if self.rational_j:
            jden = lcm(
                *(x.as_rational().denominator for row in A.J.rows for x in row)
            )
            jint = [[int(x.as_rational() * jden) for x in row] for row in A.J.rows]
            # Positive rescaling of J keeps semidefiniteness intact.
            self.s_int = [
                [
                    [
                        sum(e[r][k] * jint[k][c] for k in range(self.N))
                        for c in range(self.N)
                    ]
                    for r in range(self.N)
                ]
                for e in self.e_int
            ]
            self.pure_search = _purekernels.IntSearch(
                self.s_int, self.w_pairs, self.rho, self.N, self.m4
            )
        else:
            field_forms = [KMatrix(A.field, b.matrix) for b in self.basis]
            self.s_field = [(f * A.J).rows for f in field_forms]
            self.pure_search = _purekernels.FieldSearch(
                self.s_field, self.e_int, self.w_pairs, self.rho, self.N, self.m4, A.field
            )

    def kernel_ready(self, box: int) -> bool:
        if not (self.rational_j and HAVE_COMPILED_KERNELS):
            return False
        smax = max((abs(v) for m in self.s_int for row in m for v in row), default=0)
        wmax = max((abs(v) for r in self.w_pairs for vec in r for v in vec), default=0)
        # Accumulated candidate entries must sit far below the kernel's
        # storage limit; growth during elimination is caught per candidate.
        return self.rho * box * max(smax, wmax, 1) < 2**50


def _structured_candidate_vectors(A: ComplexTorus, data: _SearchData):
    """Coefficient vectors of the structured candidates over the NS basis.

    For declared products these are the Poincare duals of the corank-2
    coordinate-factor sublattices together with the pullbacks of the product
    polarizations of all coordinate quotients (including the torus itself);
    both signs are offered and the effectivity filter keeps the right one.
    """
    blocks = factor_blocks(A)
    forms = []
    if blocks is not None:
        fibers = []
        for offset, f in blocks:
            size = 2 * A.n
            rows = [[0] * size for _ in range(size)]
            ok = True
            for t in range(f.n):
                rows[offset + 2 * t][offset + 2 * t + 1] = 1
                rows[offset + 2 * t + 1][offset + 2 * t] = -1
            candidate = AlternatingForm(A, rows)
            if candidate.is_hodge:
                fibers.append(candidate)
            else:
                ok = False
            if not ok:
                fibers = None
                break
        if fibers:
            indices = range(len(fibers))
            for size in range(1, len(fibers) + 1):
                for subset in combinations(indices, size):
                    form = fibers[subset[0]]
                    for k in subset[1:]:
                        form = form + fibers[k]
                    forms.append(form)
        for _, W in coordinate_factor_sublattices(A, corank=2):
            dual = poincare_dual(A, W)
            forms.append(AlternatingForm.from_pair_coords(A, dual.coords))
    vectors = []
    seen = set()
    for form in forms:
        coords = ns_coordinates(A, form)
        if coords is None:
            continue
        if all(c == 0 for c in coords):
            continue
        prim = primitive_integer_vector(coords)
        for vec in (prim, tuple(-c for c in prim)):
            if vec not in seen:
                seen.add(vec)
                vectors.append(vec)
    vectors.sort()
    return vectors


def _combine(best, candidate):
    delta, pos = candidate
    if delta > best[0] or (delta == best[0] and pos >= 0 and (best[1] < 0 or pos < best[1])):
        return (delta, pos)
    return best


def _scan_box(data: _SearchData, box: int, threads: int, collect: bool):
    base = 2 * box + 1
    total = base**data.rho
    use_kernel = data.kernel_ready(box)
    chunk_count = max(1, min(threads, total))
    bounds = [
        (total * k // chunk_count, total * (k + 1) // chunk_count)
        for k in range(chunk_count)
    ]

    def run(bound):
        start, stop = bound
        if use_kernel:
            return _kernels.scan_range(
                data.s_int, data.w_pairs, data.rho, data.N, data.m4,
                box, start, stop, collect, data.pure_search,
            )
        return _purekernels.scan_range(data.pure_search, box, start, stop, collect)

    if chunk_count == 1:
        results = [run(bounds[0])]
    else:
        with ThreadPoolExecutor(max_workers=chunk_count) as pool:
            results = list(pool.map(run, bounds))

    best = (-1, -1)
    scanned = 0
    records = []
    for delta, pos, chunk_scanned, chunk_records in results:
        best = _combine(best, (delta, pos))
        scanned += chunk_scanned
        records.extend(chunk_records)
    return best, scanned, records, total


def _position_coeffs(position: int, rho: int, box: int):
    base = 2 * box + 1
    digits = []
    for _ in range(rho):
        digits.append(position % base)
        position //= base
    digits.reverse()
    return tuple(d - box for d in digits)


def _run_search(A: ComplexTorus, box: int, threads: int, collect: bool):
    if box < 1:
        raise ValueError("box must be at least 1")
    data = _SearchData(A)
    if data.rho == 0:
        return DefectSearchResult(0, None, 0, box, None), []
    best, scanned, records, total = _scan_box(data, box, threads, collect)
    extras = _structured_candidate_vectors(A, data)
    extras = [v for v in extras if any(abs(c) > box for c in v)]
    if extras:
        delta, pos, extra_scanned, extra_records = _purekernels.scan_vectors(
            data.pure_search, extras, total, collect
        )
        best = _combine(best, (delta, pos))
        scanned += extra_scanned
        records.extend(extra_records)

    if best[0] < 0:
        result = DefectSearchResult(0, None, scanned, box, None)
        return result, []
    position = best[1]
    if position < total:
        coeffs = _position_coeffs(position, data.rho, box)
    else:
        coeffs = tuple(extras[position - total])
    witness = _form_from_coeffs(A, data.basis, coeffs)
    result = DefectSearchResult(best[0], witness, scanned, box, coeffs)
    out_records = [EffectiveClassRecord(*r) for r in records] if collect else []
    return result, out_records


def _form_from_coeffs(A, basis, coeffs) -> AlternatingForm:
    form = None
    for c, b in zip(coeffs, basis):
        term = b * c
        form = term if form is None else form + term
    return form


def torus_defect(A: ComplexTorus, box: int = 2, threads: int = 1) -> DefectSearchResult:
    """Max defect over all effective classes in the coefficient box.

    The result is certified from below: the paper-level classification (see
    the classifier module) provides the matching upper bound on the test
    corpus.  `classes_scanned` makes the enumeration cost visible.
    """
    result, _ = _run_search(A, box, threads, collect=False)
    return result


def defect_survey(A: ComplexTorus, box: int = 2, threads: int = 1):
    """Like torus_defect, but also returns every effective class seen."""
    return _run_search(A, box, threads, collect=True)


def divisor_case_data(A: ComplexTorus, E: AlternatingForm):
    """(b, rho_B, cm, k) for the radical quotient of an effective class.

    Inputs for the per-divisor case analysis: the Iitaka dimension b, the
    Picard number of the quotient when b = 2, and the CM flag plus isogeny
    multiplicity of the quotient elliptic curve when b = 1.  Multiplicities
    need a declared factorization into elliptic blocks.
    """
    W = radical(A, E)
    b = A.n - W.rank // 2
    if b >= 3:
        return b, None, None, None
    B = quotient(A, W)
    if b == 2:
        return b, ns_rank(B), None, None
    cm = hom_rank(B, B) == 2
    blocks = factor_blocks(A)
    if blocks is None or any(f.n != 1 for _, f in blocks):
        raise ValueError("isogeny multiplicity needs declared elliptic factors")
    k = sum(1 for _, f in blocks if hom_rank(f, B) >= 1)
    if k < 1:
        raise ConsistencyError("quotient elliptic curve not isogenous to any factor")
    return b, None, cm, k
