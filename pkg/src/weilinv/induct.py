"""Isotropic subgroups, the quotient form on H-perp/H, and the lift/descend
maps between C[H-perp/H] and C[D].

The lift sends e^(gamma+H) to the sum of e^(gamma+mu) over mu in H; the
descend kills everything outside H-perp and projects the rest.  Both maps
commute with the Weil representations and with the invariant projections,
and are adjoint to each other for the standard inner products.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import LIMITS
from .fqm import (
    BoundExceeded,
    DiscriminantForm,
    Element,
    InternalInconsistency,
)
from .intmat import rational_inverse, row_lattice_basis, smith_normal_form
from .weil import GroupAlgebraVector, Vec


@dataclass(frozen=True)
class IsotropicSubgroup:
    """A subgroup of D on which q vanishes identically."""

    parent: DiscriminantForm
    generators: tuple[Element, ...]
    elements: tuple[Element, ...]
    perp: tuple[Element, ...] = field(compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"IsotropicSubgroup(order={self.order}, generators={list(self.generators)})"


def _close_subgroup(form: DiscriminantForm, gens: tuple[Element, ...]) -> tuple[Element, ...]:
    seen = {form.zero()}
    frontier = [form.zero()]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = form.add(cur, g)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return tuple(sorted(seen))


def _perp(form: DiscriminantForm, gens) -> tuple[Element, ...]:
    return tuple(el for el in form.elements() if all(form.b(el, g) == 0 for g in gens))


def make_isotropic_subgroup(form: DiscriminantForm, gens) -> IsotropicSubgroup:
    gens = tuple(form.normalize(g) for g in gens)
    els = _close_subgroup(form, gens)
    for el in els:
        if form.q(el) != 0:
            raise ValueError(f"subgroup generated by {gens} is not isotropic at {el}")
    sub = IsotropicSubgroup(form, gens, els, _perp(form, gens))
    if len(sub.perp) * len(els) != form.order:
        raise InternalInconsistency("|H| * |H-perp| != |D|")
    return sub


def isotropic_elements(form: DiscriminantForm) -> list[Element]:
    return form.isotropic_elements()


def isotropic_subgroups(form: DiscriminantForm, max_order: int | None = None) -> list[IsotropicSubgroup]:
    """All isotropic subgroups of D, each listed once.

    Breadth-first closure: extend by one isotropic element at a time,
    which must be orthogonal to the current generators (forced by
    q(h+k) = q(h) + q(k) + b(h,k)); deduplicate by element set.
    """
    if form.order > LIMITS.max_form_order:
        raise BoundExceeded(f"|D| = {form.order} exceeds bound {LIMITS.max_form_order}")
    iso = form.isotropic_elements()
    zero_sub = make_isotropic_subgroup(form, ())
    found: dict[tuple[Element, ...], IsotropicSubgroup] = {zero_sub.elements: zero_sub}
    frontier = [zero_sub]
    while frontier:
        nxt = []
        for sub in frontier:
            for h in iso:
                if h in sub.elements:
                    continue
                if any(form.b(h, k) != 0 for k in sub.generators):
                    continue
                els = _close_subgroup(form, sub.generators + (h,))
                if max_order is not None and len(els) > max_order:
                    continue
                if els in found:
                    continue
                new = IsotropicSubgroup(form, sub.generators + (h,), els, _perp(form, sub.generators + (h,)))
                if len(new.perp) * len(els) != form.order:
                    raise InternalInconsistency("|H| * |H-perp| != |D|")
                found[els] = new
                nxt.append(new)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (s.order, s.elements))


@dataclass
class QuotientForm:
    """H-perp/H as a discriminant form, with a fixed section into D."""

    parent: DiscriminantForm
    subgroup: IsotropicSubgroup
    form: DiscriminantForm
    section: dict[Element, Element]  # quotient element -> lex-least coset rep
    projection: dict[Element, Element]  # element of H-perp -> quotient element


def quotient(form: DiscriminantForm, subgroup: IsotropicSubgroup) -> QuotientForm:
    """Realize H-perp/H with its own generators via Smith normal form.

    H-perp and H are lifted to full-rank integer lattices in Z^k (k the
    number of generators of D); the quotient of those lattices yields
    generator orders and representatives.
    """
    k = form.rank
    perp = subgroup.perp
    if k == 0:
        return QuotientForm(form, subgroup, form, {(): ()}, {(): ()})
    perp_rows = [list(el) for el in perp] + [
        [form.orders[i] if i == j else 0 for j in range(k)] for i in range(k)
    ]
    h_rows = [list(el) for el in subgroup.elements] + [
        [form.orders[i] if i == j else 0 for j in range(k)] for i in range(k)
    ]
    basis_perp = row_lattice_basis(perp_rows, k)
    basis_h = row_lattice_basis(h_rows, k)
    inv_perp = rational_inverse(basis_perp)
    coords = []
    for row in basis_h:
        vec = [sum(row[a] * inv_perp[a][b] for a in range(k)) for b in range(k)]
        if any(x.denominator != 1 for x in vec):
            raise InternalInconsistency("H lattice is not inside the H-perp lattice")
        coords.append([int(x) for x in vec])
    u, s, v = smith_normal_form(coords)
    v_inv = _int_inverse(v)
    gen_rows = []
    orders = []
    for j in range(k):
        if s[j][j] > 1:
            orders.append(s[j][j])
            gen_rows.append([sum(v_inv[j][a] * basis_perp[a][b] for a in range(k)) for b in range(k)])
    gens = [form.normalize(tuple(r)) for r in gen_rows]
    q_gen = [form.q(g) for g in gens]
    b_gen = [
        [form.b(g1, g2) if i != j else (2 * form.q(g1)) % 1 for j, g2 in enumerate(gens)]
        for i, g1 in enumerate(gens)
    ]
    qf = DiscriminantForm(orders, q_gen, b_gen)
    if qf.order * subgroup.order**2 != form.order:
        raise InternalInconsistency("|H-perp/H| != |D| / |H|^2")
    section: dict[Element, Element] = {}
    projection: dict[Element, Element] = {}
    h_els = subgroup.elements
    for qel in qf.elements():
        rep = form.zero()
        for a, g in zip(qel, gens):
            if a:
                rep = form.add(rep, form.smul(a, g))
        coset = sorted(form.add(rep, h) for h in h_els)
        section[qel] = coset[0]
        for el in coset:
            if el in projection:
                raise InternalInconsistency("cosets of H in H-perp overlap")
            projection[el] = qel
    if len(projection) != len(perp):
        raise InternalInconsistency("cosets do not cover H-perp")
    for qel in qf.elements():
        if qf.q(qel) != form.q(section[qel]):
            raise InternalInconsistency("quotient form does not restrict q correctly")
    return QuotientForm(form, subgroup, qf, section, projection)


def _int_inverse(v: list[list[int]]) -> list[list[int]]:
    from .intmat import invert_unimodular

    return invert_unimodular(v)


def lift_up(qf: QuotientForm, v: GroupAlgebraVector) -> GroupAlgebraVector:
    """C[H-perp/H] -> C[D]: e^(gamma+H) goes to the sum over the coset."""
    if v.form is not qf.form:
        raise ValueError("vector does not live on the quotient form")
    parent = qf.parent
    out: dict[Element, object] = {}
    for qel, c in v.coeffs.items():
        rep = qf.section[qel]
        for h in qf.subgroup.elements:
            out[parent.add(rep, h)] = c
    return GroupAlgebraVector(parent, out)


def descend(qf: QuotientForm, v: GroupAlgebraVector) -> GroupAlgebraVector:
    """C[D] -> C[H-perp/H]: kill the complement of H-perp, project the rest."""
    if v.form is not qf.parent:
        raise ValueError("vector does not live on the parent form")
    out: dict[Element, object] = {}
    for el, c in v.coeffs.items():
        qel = qf.projection.get(el)
        if qel is not None:
            out[qel] = out[qel] + c if qel in out else c
    return GroupAlgebraVector(qf.form, out)
