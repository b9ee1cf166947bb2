"""Formal-integrability test and completion loop, codimension, characteristic matrix.

Completion repeats one-step projections until no equation of order <= q is
gained, mirroring the classical R^(1), R^(2), ... progression, then certifies
the result with the integrability criterion: some prolonged symbol g_rho is
2-acyclic while every projection between the base order and rho is surjective.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import jetspace as js
from .pdesystem import (
    LinearSystem,
    equation_matrix,
    prolonged_equations,
    projected_system,
    slice_at,
)
from .ratlinalg import Poly, rref
from .spencer import is_involutive_symbol, is_s_acyclic


@dataclass(frozen=True)
class CompletionStep:
    step: int
    gained: tuple  # Equation objects new at this step
    dims_before: tuple
    dims_after: tuple


@dataclass(frozen=True)
class IntegrabilityReport:
    verdict: str  # 'formally_integrable' | 'completed' | 'window_inconclusive'
    steps: int
    trace: tuple
    final_system: LinearSystem
    acyclic_order: int | None
    projection_flags: tuple  # ((order, surjective), ...)
    window_limited: bool

    @property
    def integrable(self) -> bool:
        return self.verdict in ("formally_integrable", "completed")


def _dims_upto(sys: LinearSystem, q: int) -> tuple:
    return tuple(slice_at(sys, t).dimension for t in range(q + 1))


def _gained_equations(old: LinearSystem, new: LinearSystem) -> tuple:
    """Rows of `new` that are not consequences of `old` at the same order."""
    q = max(old.order, new.order)
    columns = js.jets_upto(old.n, old.m, q)
    base = rref(equation_matrix(prolonged_equations(old, q), columns, old.params))
    pivot_rows = {}
    for i, p in enumerate(base.pivots):
        pivot_rows[p] = base.matrix.entries[i]
    index = {jc: j for j, jc in enumerate(columns)}
    gained = []
    for e in new.equations:
        vec = [old.zero()] * len(columns)
        for jc, c in e.terms.items():
            vec[index[jc]] = c
        for j in range(len(columns)):
            if vec[j] and j in pivot_rows:
                f = vec[j]
                vec = [a - f * b for a, b in zip(vec, pivot_rows[j])]
        if any(vec):
            gained.append(e)
    return tuple(gained)


def reduce_order(sys: LinearSystem) -> LinearSystem:
    """Drop to a lower-order presentation when the low-order rows generate everything."""
    current = sys
    while current.order > 1:
        q = current.order
        sub_eqs = [e for e in current.equations if e.order < q]
        if not sub_eqs:
            break
        sub = current.replace(sub_eqs)
        if slice_at(sub, q).dimension != slice_at(current, q).dimension:
            break
        current = projected_system(sub, 0)
    return current


def projection_surjective(sys: LinearSystem, order: int) -> bool:
    """True iff projecting R_{order+1} down one order loses no solutions."""
    q = sys.order
    horizon = max(order + 1, q)
    columns = js.jets_upto(sys.n, sys.m, horizon)
    result = rref(equation_matrix(prolonged_equations(sys, horizon), columns, sys.params))
    low_rank = 0
    for i in range(len(result.pivots)):
        row = result.matrix.entries[i]
        support_order = max(
            js.order_of(columns[j].mu) for j in range(len(columns)) if row[j]
        )
        if support_order <= order:
            low_rank += 1
    dim_proj = js.jet_count_upto(sys.n, order) * sys.m - low_rank
    return dim_proj == slice_at(sys, order).dimension


def complete(sys: LinearSystem, max_steps: int = 10) -> IntegrabilityReport:
    """Project one step at a time until nothing new appears, then certify.

    The certification walks rho upward from the final order looking for a
    2-acyclic symbol with surjective projections below; when the window runs
    out the verdict is 'window_inconclusive' rather than a silent guess.
    """
    if not sys.equations:
        return IntegrabilityReport("formally_integrable", 0, (), sys, 0, ((0, True),), False)
    current = sys
    trace = []
    steps = 0
    window = 2 * max(sys.order, 1) + sys.n
    for step in range(1, max_steps + 1):
        q = current.order
        dims_before = _dims_upto(current, q)
        nxt = projected_system(current, 1)
        dims_after = _dims_upto(nxt, q)
        if dims_after == dims_before:
            break
        gained = _gained_equations(current, nxt)
        trace.append(CompletionStep(step, gained, dims_before, dims_after))
        current = nxt
        steps += 1
    else:
        return IntegrabilityReport(
            "window_inconclusive", steps, tuple(trace), current, None, (), True
        )
    current = reduce_order(current)
    q = current.order
    flags = []
    acyclic_order = None
    window_limited = False
    for rho in range(q, q + window + 1):
        flags.append((rho, projection_surjective(current, rho)))
        if not flags[-1][1]:
            break
        ok, limited, _ = is_s_acyclic(current, 2, rho, window)
        if ok:
            acyclic_order = rho
            window_limited = limited
            break
    if acyclic_order is None:
        verdict = "window_inconclusive"
    else:
        verdict = "formally_integrable" if steps == 0 else "completed"
    return IntegrabilityReport(
        verdict, steps, tuple(trace), current, acyclic_order, tuple(flags), window_limited
    )


def is_completed(sys: LinearSystem) -> bool:
    """True when one more projection step gains nothing at orders <= q."""
    q = sys.order
    return _dims_upto(projected_system(sys, 1), q) == _dims_upto(sys, q)


def involutive_order(sys: LinearSystem, seed: int = 0, window: int | None = None):
    """First order >= q at which the symbol passes the involution test."""
    if window is None:
        window = 2 * max(sys.order, 1) + sys.n
    q = max(sys.order, 1)
    for order in range(q, q + window + 1):
        res = is_involutive_symbol(sys, order, seed=seed)
        if res.involutive:
            return order, res
    raise ValueError("no involutive order found within the window")


def codimension(sys: LinearSystem, seed: int = 0) -> int:
    """n minus the largest class with a nonzero character, on the involutive form.

    Requires a completed system; the characters are taken at the first
    involutive order (the system's own order in every corpus case except the
    finite-type flagship, whose symbol only becomes involutive once it dies).
    """
    if not sys.equations:
        return 0
    if not is_completed(sys):
        raise ValueError("codimension requires a completed system")
    _, res = involutive_order(sys, seed=seed)
    alpha = res.tableau.alpha
    last_nonzero = 0
    for i, a in enumerate(alpha, start=1):
        if a:
            last_nonzero = i
    if last_nonzero == 0:
        return sys.n
    return sys.n - last_nonzero


@dataclass(frozen=True)
class CharacteristicMatrix:
    """Top-order coefficient matrix over QQ[chi] and its m x m minor generators."""

    matrix: tuple  # rows: equations, cols: unknowns, entries Poly in n variables
    minors: tuple  # Poly generators of the (un-radicalized) characteristic ideal

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0


def characteristic_matrix(sys: LinearSystem) -> CharacteristicMatrix:
    """Substitute y^k_mu -> chi^mu in the top-order parts of the equations.

    Emits all m x m minors as polynomial generators; the radical is not
    computed.
    """
    n, m, q = sys.n, sys.m, sys.order
    rows = []
    for e in sys.equations:
        if e.order < q:
            continue
        row = [Poly.zero(n) for _ in range(m)]
        for jc, c in e.top_terms().items():
            mono = Poly(n, {jc.mu: c})
            row[jc.k - 1] = row[jc.k - 1] + mono
        rows.append(tuple(row))
    minors = []
    if rows and m <= len(rows):
        import itertools

        for combo in itertools.combinations(range(len(rows)), m):
            sub = [rows[i] for i in combo]
            minors.append(_poly_det(sub))
    minors = [p for p in minors if p]
    return CharacteristicMatrix(tuple(rows), tuple(minors))


def _poly_det(rows) -> Poly:
    m = len(rows)
    if m == 1:
        return rows[0][0]
    total = Poly.zero(rows[0][0].nvars)
    for j in range(m):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * _poly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total
