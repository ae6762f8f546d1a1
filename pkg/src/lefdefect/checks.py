"""Cross-validation suites run by the CLI's verify command.

Each check recomputes one of the structural identities the defect machinery
relies on, on a concrete torus, through two independent code paths:

* voisin    - kernel of restriction to a divisor subtorus equals the kernel
              of cup product with its Poincare dual, on the NS subspace.
* kunneth   - Picard number of a product splits as rho(C) + rho(T) + rk Hom.
* lefschetz - cup product with a polarization is injective on all of H^2
              when the dimension is at least 3.
* oracle    - the brute-force box search agrees with the symbolic
              classification of the inferred isogeny factorization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .classifier import IsogenyFactor, IsogenySpec, classify
from .cohomology import (
    class_of_form,
    cup_matrix,
    poincare_dual,
    restriction_map,
    wedge,
    wedge_basis,
)
from .effectivity import is_effective_class, torus_defect
from .exactmath import QMatrix, kernel_basis, rank
from .torus import (
    AlternatingForm,
    ComplexTorus,
    coordinate_factor_sublattices,
    factor_blocks,
    hom_rank,
    ns_basis,
    ns_rank,
    product,
)

CHECK_NAMES = ("voisin", "kunneth", "lefschetz", "oracle")


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    detail: str


def _span_contains(span_vectors, vec) -> bool:
    if not span_vectors:
        return all(x == 0 for x in vec)
    base = [list(v) for v in span_vectors]
    extended = base + [list(vec)]
    return rank(QMatrix(base)) == rank(QMatrix(extended))


def subspaces_equal(vs, ws) -> bool:
    """Equal dimension and mutual containment, checked exactly."""
    if len(vs) != len(ws):
        return False
    return all(_span_contains(ws, v) for v in vs) and all(
        _span_contains(vs, w) for w in ws
    )


def restriction_kernel_on_ns(A: ComplexTorus, W):
    ns = ns_basis(A)
    R = restriction_map(A, W)
    cols = [R.apply(b.pair_coords()) for b in ns]
    M = QMatrix([[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))])
    return kernel_basis(M)


def cup_dual_kernel_on_ns(A: ComplexTorus, W):
    ns = ns_basis(A)
    dual = poincare_dual(A, W)
    cols = [wedge(class_of_form(b), dual).coords for b in ns]
    M = QMatrix([[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))])
    return kernel_basis(M)


def check_voisin(A: ComplexTorus) -> CheckResult:
    """Restriction kernel vs cup-product kernel for divisor subtori."""
    lattices = coordinate_factor_sublattices(A, corank=2)
    if not lattices:
        return CheckResult("voisin", "skipped", "no corank-2 factor sublattices declared")
    for subset, W in lattices:
        k_restrict = restriction_kernel_on_ns(A, W)
        k_cup = cup_dual_kernel_on_ns(A, W)
        if not subspaces_equal(k_restrict, k_cup):
            return CheckResult(
                "voisin",
                "fail",
                f"kernels differ for factor subset {subset}: "
                f"dims {len(k_restrict)} vs {len(k_cup)}",
            )
    return CheckResult(
        "voisin", "pass", f"kernel equality on {len(lattices)} divisor subtori"
    )


def check_kunneth(A: ComplexTorus) -> CheckResult:
    blocks = factor_blocks(A)
    if blocks is None or len(blocks) < 2:
        return CheckResult("kunneth", "skipped", "torus is not a declared product")
    head = blocks[0][1]
    tail = product([f for _, f in blocks[1:]])
    lhs = ns_rank(A)
    rho_c, rho_t = ns_rank(head), ns_rank(tail)
    homs = hom_rank(tail, head)
    rhs = rho_c + rho_t + homs
    detail = f"rho = {lhs} vs {rho_c} + {rho_t} + {homs}"
    if lhs != rhs:
        return CheckResult("kunneth", "fail", detail)
    return CheckResult("kunneth", "pass", detail)


def product_polarization(A: ComplexTorus) -> Optional[AlternatingForm]:
    """Sum of the standard fiber forms of the declared elliptic blocks."""
    blocks = factor_blocks(A)
    if blocks is None:
        return None
    size = 2 * A.n
    rows = [[0] * size for _ in range(size)]
    for offset, f in blocks:
        for t in range(f.n):
            rows[offset + 2 * t][offset + 2 * t + 1] = 1
            rows[offset + 2 * t + 1][offset + 2 * t] = -1
    form = AlternatingForm(A, rows)
    if not form.is_hodge or not is_effective_class(A, form):
        return None
    return form


def check_lefschetz(A: ComplexTorus) -> CheckResult:
    """Injectivity of cup product with a polarization on all of H^2."""
    if A.n < 3:
        return CheckResult("lefschetz", "skipped", "requires n >= 3")
    h = product_polarization(A)
    if h is None:
        return CheckResult("lefschetz", "skipped", "no product polarization available")
    M = cup_matrix(A, class_of_form(h))
    full = len(wedge_basis(2 * A.n, 2))
    r = rank(M)
    if r != full:
        return CheckResult("lefschetz", "fail", f"rank {r} < {full} on H^2")
    return CheckResult("lefschetz", "pass", f"cup with polarization has full rank {full}")


def isogeny_spec_of(A: ComplexTorus) -> Optional[IsogenySpec]:
    """Isogeny factorization of a declared product of elliptic curves.

    Curves are grouped by nonvanishing Hom rank; within a group the CM flag
    is shared, so the group contributes one factor with its multiplicity.
    """
    blocks = factor_blocks(A)
    if blocks is None or any(f.n != 1 for _, f in blocks):
        return None
    curves = [f for _, f in blocks]
    groups = []
    for curve in curves:
        for group in groups:
            if hom_rank(curve, group[0]) >= 1:
                group.append(curve)
                break
        else:
            groups.append([curve])
    factors = []
    for idx, group in enumerate(groups):
        cm_flags = {c.has_cm for c in group}
        if len(cm_flags) != 1:
            raise RuntimeError("isogenous curves disagree on CM")
        factors.append(
            IsogenyFactor(
                "elliptic",
                len(group),
                group[0].label or f"E{idx + 1}",
                has_cm=cm_flags.pop(),
            )
        )
    return IsogenySpec(tuple(factors))


def check_oracle(A: ComplexTorus, box: int = 2, threads: int = 1) -> CheckResult:
    spec = isogeny_spec_of(A)
    if spec is None:
        return CheckResult("oracle", "skipped", "not a declared product of elliptic curves")
    expected = classify(spec).delta
    result = torus_defect(A, box=box, threads=threads)
    detail = (
        f"search delta {result.delta} vs classifier {expected} "
        f"({result.classes_scanned} classes scanned)"
    )
    if result.delta != expected:
        return CheckResult("oracle", "fail", detail)
    return CheckResult("oracle", "pass", detail)


def run_checks(A: ComplexTorus, names, box: int = 2, threads: int = 1):
    runners = {
        "voisin": lambda: check_voisin(A),
        "kunneth": lambda: check_kunneth(A),
        "lefschetz": lambda: check_lefschetz(A),
        "oracle": lambda: check_oracle(A, box=box, threads=threads),
    }
    results = []
    for name in names:
        if name not in runners:
            raise ValueError(f"unknown check {name!r}")
        results.append(runners[name]())
    return results
