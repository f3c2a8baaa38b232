"""The quotient-criteria engine.

Given the l2-Euler characteristic of an ambient group F acting cocompactly
on a tree with stabilizers in class C, and the number m of normal
generators of a subgroup N meeting all stabilizers trivially, set

    k = chi(F) + m.

For G = F/N:  k <= 0 forces G infinite; k < 0 additionally forces
b1(G) >= -k > 0 (so G is non-amenable); and if G is finite then k > 0 with
|G| >= 1/k.  For a presentation < x_1..x_n | r_1^k_1..r_m^k_m > whose
relators have order exactly k_i in the quotient, the same engine applies
with F the free product F_n * C_k1 * ... * C_km, giving
k = 1 - n + sum(1/k_i).

The k > 0 branch never claims finiteness: it yields the conditional
statement "IF G is finite THEN |G| >= 1/k".  A violated hypothesis makes
the verdict Inconclusive; an asserted one leaves the verdict conditional.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .descriptors import is_in_class_C
from .presentations import FreeProductForm, TorsionPresentation, to_free_product_form
from .rationals import Rat, format_rat

CLASS_INFINITE = "Infinite"
CLASS_INFINITE_NONAMENABLE = "InfiniteNonAmenable"
CLASS_FINITE_ORDER_BOUND = "FiniteOrderBound"
CLASS_INCONCLUSIVE = "Inconclusive"

HYP_CLASS_C = "stabilizers-in-class-C"
HYP_N_FREE = "N-meets-stabilizers-trivially"
HYP_COCOMPACT = "action-cocompact"
HYP_TORSION = "relators-have-stated-orders"

STATUS_VERIFIED = "verified"
STATUS_ASSERTED = "asserted"
STATUS_VIOLATED = "violated"
STATUS_UNDETERMINED = "undetermined"
_STATUSES = {STATUS_VERIFIED, STATUS_ASSERTED, STATUS_VIOLATED, STATUS_UNDETERMINED}

_STANDARD_HYPOTHESES = (HYP_CLASS_C, HYP_N_FREE, HYP_COCOMPACT)

NOTE_CONDITIONAL_BOUND = (
    "classification FiniteOrderBound does not claim G is finite; the order "
    "bound is conditional"
)
NOTE_FORMULA = (
    "k computed as chi(F) + m; for presentations this equals "
    "1 - n + sum(1/k_i), and the order bound in the k > 0 branch is 1/k "
    "(the variant with sum(k_i) in the denominator is inconsistent with "
    "the chi(F) + m route and is not used)"
)
NOTE_NORMALIZATION = (
    "relators are normalized to primitive roots: each relator word is "
    "freely and cyclically reduced and factored as root^e with e maximal; "
    "an explicit exponent multiplies e"
)


class InternalInconsistencyError(AssertionError):
    """Two routes to the same quantity disagreed; a defect, not an input error."""


@dataclass(frozen=True, slots=True)
class Verdict:
    """Structured conclusion of the criteria engine.

    Invariants: b1_lower_bound = max(0, -k); order_lower_bound present
    exactly when k > 0 and then equals 1/k; a non-Inconclusive verdict is
    Infinite or InfiniteNonAmenable exactly when k <= 0.
    """

    k: Rat
    classification: str
    b1_lower_bound: Rat
    order_lower_bound: Rat | None
    hypotheses: dict[str, str]
    assumptions: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()
    engine: dict[str, object] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out: dict = {
            "k": format_rat(self.k),
            "classification": self.classification,
            "b1_lower_bound": format_rat(self.b1_lower_bound),
        }
        if self.order_lower_bound is not None:
            out["order_lower_bound"] = format_rat(self.order_lower_bound)
        out["hypotheses"] = dict(self.hypotheses)
        out["assumptions"] = list(self.assumptions)
        out["notes"] = list(self.notes)
        if self.engine:
            out["engine"] = dict(self.engine)
        return out


def evaluate_quotient(
    chiF: Rat,
    m: int,
    hypotheses: dict[str, str] | None = None,
    assumptions: tuple[str, ...] = (),
    extra_notes: tuple[str, ...] = (),
    engine: dict[str, object] | None = None,
) -> Verdict:
    """Classify the quotient G = F/N from chi(F) and m normal generators.

    Hypotheses not supplied default to "asserted" (the engine cannot check
    them from these two numbers alone); only a violated hypothesis forces
    an Inconclusive classification.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    status = {name: STATUS_ASSERTED for name in _STANDARD_HYPOTHESES}
    if hypotheses:
        for name, value in hypotheses.items():
            if value not in _STATUSES:
                raise ValueError(f"unknown hypothesis status {value!r} for {name!r}")
            status[name] = value

    chiF = Fraction(chiF)
    k = chiF + m
    b1_lower = max(Fraction(0), -k)
    order_lower = (1 / k) if k > 0 else None

    notes = [NOTE_FORMULA]
    notes.extend(extra_notes)
    violated = sorted(n for n, s in status.items() if s == STATUS_VIOLATED)
    undetermined = sorted(n for n, s in status.items() if s == STATUS_UNDETERMINED)
    if violated:
        classification = CLASS_INCONCLUSIVE
        notes.append(
            "hypothesis violated: " + ", ".join(violated) + "; the criteria "
            "do not apply and no conclusion about G is drawn"
        )
    else:
        if undetermined:
            notes.append(
                "hypothesis undetermined (missing descriptor data): "
                + ", ".join(undetermined)
                + "; conclusions are conditional on it"
            )
        if k < 0:
            classification = CLASS_INFINITE_NONAMENABLE
            notes.append(
                f"k = {format_rat(k)} < 0: G is infinite, non-amenable, and "
                f"b1(G) >= {format_rat(b1_lower)}"
            )
        elif k == 0:
            classification = CLASS_INFINITE
            notes.append("k = 0: G is infinite")
        else:
            classification = CLASS_FINITE_ORDER_BOUND
            notes.append(
                f"IF G is finite THEN |G| >= {format_rat(order_lower)}"
            )
            notes.append(NOTE_CONDITIONAL_BOUND)

    return Verdict(
        k=k,
        classification=classification,
        b1_lower_bound=b1_lower,
        order_lower_bound=order_lower,
        hypotheses=status,
        assumptions=tuple(assumptions),
        notes=tuple(notes),
        engine=dict(engine or {}),
    )


def evaluate_torsion_presentation(
    tp: TorsionPresentation,
    torsion_status: str = STATUS_ASSERTED,
    free_product: FreeProductForm | None = None,
) -> Verdict:
    """Apply the criteria to a presentation with torsion relators.

    Computes k = 1 - n + sum(1/k_i) directly and as chi(F) + m through the
    free-product graph of groups; the two must agree exactly.  The
    hypothesis that each r_i has order exactly k_i in G defaults to
    "asserted"; the coset-enumeration oracle may upgrade it to "verified"
    or "violated" via ``torsion_status``.
    """
    if torsion_status not in _STATUSES:
        raise ValueError(f"unknown hypothesis status {torsion_status!r}")
    form = free_product if free_product is not None else to_free_product_form(tp)
    n, m = tp.n, tp.m
    sum_recip = tp.sum_reciprocal_exponents()
    k_direct = 1 - n + sum_recip
    k_via_chi = form.chi + form.m
    if k_direct != k_via_chi or form.m != m:
        raise InternalInconsistencyError(
            f"k disagrees between the direct formula ({k_direct}) and "
            f"chi(F) + m ({k_via_chi})"
        )

    class_c_ok = all(
        bool(is_in_class_C(d))
        for d in list(form.graph.vertices.values())
        + [e.group for e in form.graph.edges]
    )
    hypotheses = {
        HYP_CLASS_C: STATUS_VERIFIED if class_c_ok else STATUS_VIOLATED,
        HYP_COCOMPACT: STATUS_VERIFIED,
        HYP_N_FREE: torsion_status,
        HYP_TORSION: torsion_status,
    }
    engine = {
        "n": n,
        "m": m,
        "sum_reciprocal_k": format_rat(sum_recip),
        "chi_F": format_rat(form.chi),
        "n_minus_sum_reciprocal_k": format_rat(n - sum_recip),
    }
    return evaluate_quotient(
        form.chi,
        m,
        hypotheses=hypotheses,
        extra_notes=(NOTE_NORMALIZATION,),
        engine=engine,
    )


COROLLARY_NOTES = (
    "G does not have property (T)",
    "G has no commensurated infinite amenable subgroup",
    "if additionally b2(G) = 0, then G is in the class D_reg",
    "if G is finitely presented and (virtually) indicable, then G is "
    "(virtually) acylindrically hyperbolic",
    "G is C*-simple iff it has trivial amenable radical",
)


def corollary_notes(v: Verdict) -> list[str]:
    """Annotations that follow from a positive lower bound on b1(G).

    Emitted only when the bound is actually asserted, i.e. the verdict is
    InfiniteNonAmenable; conditional corollaries quote their conditions.
    """
    if v.classification != CLASS_INFINITE_NONAMENABLE or v.b1_lower_bound <= 0:
        return []
    return list(COROLLARY_NOTES)
