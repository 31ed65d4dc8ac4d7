"""Discriminant forms: finite abelian groups with a Q/Z-valued quadratic form.

A form is stored by a list of generator orders d_i together with the
rational values q(g_i) and b(g_i, g_j) mod 1.  Group elements are plain
coefficient tuples (a_1, ..., a_k) with 0 <= a_i < d_i, so they hash and
sort deterministically.  Forms can be built from a genus symbol (one
orthogonal block per indecomposable Jordan piece) or from the dual
quotient of an even lattice via Smith normal form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd

from . import cyclo
from .arith import (
    factorize,
    frac1,
    is_square,
    kronecker,
    lcm,
    legendre,
    prime_power,
)
from .config import LIMITS
from .cyclo import Cyclo, e_of, sqrt_int
from .intmat import rational_inverse, smith_normal_form

Element = tuple[int, ...]


class SymbolError(ValueError):
    """Genus symbol is syntactically or arithmetically inconsistent."""


class BoundExceeded(RuntimeError):
    """A brute-force loop would exceed the configured size bounds."""


class InternalInconsistency(AssertionError):
    """Two supposedly equivalent computations disagreed (construction bug)."""


def _kron2(t: int) -> int:
    """(t/2) for odd t: +1 for t = +-1 mod 8, -1 for t = +-3 mod 8."""
    return 1 if t % 8 in (1, 7) else -1


# ---------------------------------------------------------------------------
# Genus symbols
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JordanComponent:
    """One Jordan constituent q^(eps n), q_II^(eps n) or q_t^(eps n)."""

    q: int
    n: int
    sign: int
    t: int | None = None  # subscript mod 8; None for odd p and even 2-adic
    even: bool = False  # True for the 2-adic type II components

    def __post_init__(self):
        pk = prime_power(self.q)
        if pk is None:
            raise SymbolError(f"{self.q} is not a prime power > 1")
        p, _ = pk
        if self.n < 1:
            raise SymbolError("component rank must be positive")
        if self.sign not in (1, -1):
            raise SymbolError("component sign must be +1 or -1")
        if p != 2:
            if self.t is not None or self.even:
                raise SymbolError(f"odd prime power {self.q} takes no subscript")
        elif self.even:
            if self.t is not None:
                raise SymbolError("type II component takes no numeric subscript")
            if self.n % 2:
                raise SymbolError("type II components have even rank")
        else:
            if self.t is None:
                raise SymbolError(f"2-adic component {self.q}^{self.n} needs a subscript")
            if (self.t - self.n) % 2:
                raise SymbolError(f"subscript {self.t} must equal rank {self.n} mod 2")
            if _split_odd_two_adic(self.t % 8, self.sign, self.n) is None:
                raise SymbolError(
                    f"no rank-1 decomposition: {self.q}_{self.t}^"
                    f"{'+' if self.sign > 0 else '-'}{self.n} does not exist"
                )

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]

    @property
    def level(self) -> int:
        if self.p == 2 and not self.even:
            return 2 * self.q
        return self.q

    @property
    def order(self) -> int:
        return self.q**self.n

    def excess(self) -> int:
        """p-excess (odd p) or oddity (p = 2), as a residue mod 8."""
        k = 4 if (not is_square(self.q) and self.sign < 0) else 0
        if self.p != 2:
            return (self.n * (self.q - 1) + k) % 8
        return ((self.t or 0) + k) % 8

    def __str__(self) -> str:
        s = "+" if self.sign > 0 else "-"
        if self.even:
            return f"{self.q}_II^{s}{self.n}"
        if self.t is not None:
            return f"{self.q}_{self.t % 8}^{s}{self.n}"
        return f"{self.q}^{s}{self.n}"


def _split_odd_two_adic(t: int, sign: int, n: int) -> list[int] | None:
    """Subscripts of rank-1 pieces q_u^((u/2)) summing to q_t^(sign n)."""
    if n == 1:
        return [t] if t % 2 == 1 and _kron2(t) == sign else None
    for u in (1, 3, 5, 7):
        rest = _split_odd_two_adic((t - u) % 8, sign * _kron2(u), n - 1)
        if rest is not None:
            return [u] + rest
    return None


_COMPONENT_RE = re.compile(r"^(\d+)(?:_(II|\d+))?\^([+-])(\d+)$")


class JordanSymbol:
    """A dot-separated list of Jordan components, e.g. 2_1^+1.4_5^-1.8_II^+2."""

    def __init__(self, components: list[JordanComponent]):
        merged: dict[tuple[int, bool], JordanComponent] = {}
        for comp in components:
            key = (comp.q, comp.even)
            if key in merged:
                old = merged[key]
                t = None if old.t is None and comp.t is None else ((old.t or 0) + (comp.t or 0)) % 8
                merged[key] = JordanComponent(comp.q, old.n + comp.n, old.sign * comp.sign, t, comp.even)
            else:
                merged[key] = comp
        self.components = sorted(merged.values(), key=lambda c: (c.q, c.even))

    @staticmethod
    def parse(text: str) -> "JordanSymbol":
        text = text.strip().replace("−", "-")
        if not text:
            return JordanSymbol([])
        comps = []
        for chunk in text.split("."):
            m = _COMPONENT_RE.match(chunk.strip())
            if not m:
                raise SymbolError(f"cannot parse component {chunk!r}")
            q = int(m.group(1))
            sub = m.group(2)
            sign = 1 if m.group(3) == "+" else -1
            n = int(m.group(4))
            pk = prime_power(q)
            if pk is None:
                raise SymbolError(f"{q} is not a prime power > 1")
            if sub == "II":
                comps.append(JordanComponent(q, n, sign, even=True))
            elif sub is not None:
                comps.append(JordanComponent(q, n, sign, t=int(sub) % 8))
            else:
                comps.append(JordanComponent(q, n, sign))
        return JordanSymbol(comps)

    def order(self) -> int:
        out = 1
        for c in self.components:
            out *= c.order
        return out

    def level(self) -> int:
        return reduce(lcm, (c.level for c in self.components), 1)

    def signature(self) -> int:
        """sign(D) = oddity(D) - sum of p-excesses, mod 8."""
        sig = 0
        for c in self.components:
            sig += c.excess() if c.p == 2 else -c.excess()
        return sig % 8

    def __str__(self) -> str:
        return ".".join(str(c) for c in self.components)

    def __eq__(self, other) -> bool:
        return isinstance(other, JordanSymbol) and str(self) == str(other)


# ---------------------------------------------------------------------------
# Discriminant forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """One indecomposable orthogonal block of a constructed form.

    kind is 'odd' (odd prime power q, one generator of norm a/q),
    'odd2' (2-adic q_t^(+-1), one generator of norm t/2q) or
    'even2' (2-adic q_II^(+-2), two generators).
    """

    kind: str
    q: int
    positions: tuple[int, ...]
    data: int  # a for 'odd', t for 'odd2', sign for 'even2'


class DiscriminantForm:
    """Finite abelian group with non-degenerate quadratic form q: D -> Q/Z."""

    def __init__(
        self,
        orders,
        q_gen,
        b_gen,
        *,
        blocks: tuple[Block, ...] | None = None,
        symbol: JordanSymbol | None = None,
        lattice=None,
    ):
        self.orders = tuple(int(d) for d in orders)
        if any(d < 2 for d in self.orders):
            raise ValueError("generator orders must be >= 2")
        self.q_gen = tuple(frac1(x) for x in q_gen)
        self.b_gen = tuple(tuple(frac1(x) for x in row) for row in b_gen)
        k = len(self.orders)
        for i in range(k):
            if self.b_gen[i][i] != frac1(2 * self.q_gen[i]):
                raise ValueError("diagonal of b must equal 2q mod 1")
            for j in range(k):
                if self.b_gen[i][j] != self.b_gen[j][i]:
                    raise ValueError("b must be symmetric")
        self.blocks = blocks
        self.symbol = symbol
        self.lattice = lattice
        self._strides = []
        s = 1
        for d in reversed(self.orders):
            self._strides.append(s)
            s *= d
        self._strides.reverse()
        self.order = s
        self._elements: list[Element] | None = None
        self._level: int | None = None
        self._signature: int | None = None
        self._components = None
        self._isotropic: list[Element] | None = None
        self._caches: dict = {}

    # -- element bookkeeping -------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.orders)

    def zero(self) -> Element:
        return (0,) * self.rank

    def elements(self) -> list[Element]:
        if self._elements is None:
            if self.order > LIMITS.max_form_order:
                raise BoundExceeded(f"|D| = {self.order} exceeds bound {LIMITS.max_form_order}")
            self._elements = list(product(*(range(d) for d in self.orders)))
        return self._elements

    def index(self, el: Element) -> int:
        return sum(a * s for a, s in zip(el, self._strides))

    def element_at(self, idx: int) -> Element:
        out = []
        for d, s in zip(self.orders, self._strides):
            out.append((idx // s) % d)
        return tuple(out)

    def normalize(self, el) -> Element:
        return tuple(a % d for a, d in zip(el, self.orders))

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.orders))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % d for x, y, d in zip(a, b, self.orders))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % d for x, d in zip(a, self.orders))

    def smul(self, c: int, a: Element) -> Element:
        return tuple((c * x) % d for x, d in zip(a, self.orders))

    def element_order(self, a: Element) -> int:
        return reduce(lcm, (d // gcd(x, d) for x, d in zip(a, self.orders)), 1)

    def exponent(self) -> int:
        return reduce(lcm, self.orders, 1)

    # -- the quadratic and bilinear forms -------------------------------------

    def q(self, el: Element) -> Fraction:
        total = Fraction(0)
        for i, a in enumerate(el):
            if a:
                total += a * a * self.q_gen[i]
                for j in range(i + 1, self.rank):
                    if el[j]:
                        total += a * el[j] * self.b_gen[i][j]
        return frac1(total)

    def b(self, x: Element, y: Element) -> Fraction:
        total = Fraction(0)
        for i, a in enumerate(x):
            if a:
                row = self.b_gen[i]
                for j, c in enumerate(y):
                    if c:
                        total += a * c * row[j]
        return frac1(total)

    # -- invariants -------------------------------------------------------------

    def level(self) -> int:
        """Smallest N with N*q(gamma) integral for every gamma."""
        if self._level is None:
            n = 1
            for q in self.q_gen:
                n = lcm(n, q.denominator)
            for i in range(self.rank):
                for j in range(i + 1, self.rank):
                    n = lcm(n, self.b_gen[i][j].denominator)
            self._level = n
        return self._level

    def gauss_sum(self, c: int = 1) -> Cyclo:
        """Sum of e(c*q(gamma)) over all of D, computed exactly."""
        total = cyclo.ZERO
        for el in self.elements():
            total = total + e_of(c * self.q(el))
        return total

    def signature(self) -> int:
        """Signature mod 8, extracted from the exact Gauss sum blockwise."""
        if self._signature is None:
            sig = 0
            for part, _ in self.orthogonal_components():
                sig += _signature_from_gauss_sum(part)
            sig %= 8
            if self.symbol is not None and self.symbol.signature() != sig:
                raise InternalInconsistency(
                    f"Gauss sum gives signature {sig}, symbol {self.symbol} gives {self.symbol.signature()}"
                )
            self._signature = sig
        return self._signature

    def oddity(self) -> int:
        """Signature of the 2-part, which equals the oddity of D mod 8."""
        if self.order % 2:
            return 0
        for p, part, _ in self.p_part_decompose():
            if p == 2:
                return part.signature()
        raise InternalInconsistency("even-order form without a 2-part")

    def square_class(self) -> str:
        return "square" if is_square(self.order) else "non-square"

    def chi(self, a: int) -> int:
        """The quadratic character (a/|D|) e((a-1) oddity/8) attached to D."""
        if self.signature() % 2:
            raise ValueError("character is defined for even signature only")
        n = self.level()
        if gcd(a, n) != 1:
            raise ValueError(f"{a} is not coprime to the level {n}")
        odd = self.oddity()
        assert odd % 2 == 0
        phase = ((a - 1) * odd // 2) % 4  # e((a-1) odd/8) with (a-1) odd even
        assert phase in (0, 2), "character value must be real"
        return kronecker(a, self.order) * (1 if phase == 0 else -1)

    # -- orthogonal decomposition ------------------------------------------------

    def orthogonal_components(self):
        """Split the generators into b-orthogonal groups of positions.

        Returns a list of (subform, positions).  Subforms are shared
        through a registry so caches are reused across parents.
        """
        if self._components is None:
            k = self.rank
            parent = list(range(k))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for i in range(k):
                for j in range(i + 1, k):
                    if self.b_gen[i][j]:
                        parent[find(i)] = find(j)
            groups: dict[int, list[int]] = {}
            for i in range(k):
                groups.setdefault(find(i), []).append(i)
            comps = []
            for positions in sorted(groups.values()):
                pos = tuple(positions)
                sub = _shared_form(
                    tuple(self.orders[i] for i in pos),
                    tuple(self.q_gen[i] for i in pos),
                    tuple(tuple(self.b_gen[i][j] for j in pos) for i in pos),
                )
                comps.append((sub, pos))
            self._components = comps
        return self._components

    def project_element(self, el: Element, positions) -> Element:
        return tuple(el[i] for i in positions)

    # -- subquotients along multiplication by c -----------------------------------

    def kernel_of_mul(self, c: int) -> list[Element]:
        return [el for el in self.elements() if all((c * a) % d == 0 for a, d in zip(el, self.orders))]

    def image_of_mul(self, c: int) -> list[Element]:
        return sorted({self.smul(c, el) for el in self.elements()})

    def coset_dcstar(self, c: int) -> list[Element]:
        """D^{c*}: all gamma with c*q(alpha) + b(alpha, gamma) = 0 for alpha in D_c."""
        dc = self.kernel_of_mul(c)
        out = []
        for gamma in self.elements():
            if all(frac1(c * self.q(al) + self.b(al, gamma)) == 0 for al in dc):
                out.append(gamma)
        return out

    def subgroup_dc(self, c: int):
        """(D_c, D^c, D^{c*}) with the coset property asserted."""
        dc = self.kernel_of_mul(c)
        image = self.image_of_mul(c)
        star = self.coset_dcstar(c)
        if len(star) != len(image):
            raise InternalInconsistency("D^{c*} is not a coset of D^c")
        base = star[0]
        if sorted(self.add(base, el) for el in image) != sorted(star):
            raise InternalInconsistency("D^{c*} is not a coset of D^c")
        return dc, image, star

    def canonical_xc(self, c: int) -> Element:
        """Canonical 2-torsion base point of D^{c*}.

        For forms built from a genus symbol the base point is assembled
        blockwise: it is supported exactly on the odd 2-adic blocks whose
        exponent equals the 2-part of c.  Other forms fall back to the
        lexicographically least 2-torsion element of D^{c*}.
        """
        if self.blocks is not None:
            x = [0] * self.rank
            two = 1
            cc = abs(c)
            while cc and cc % 2 == 0:
                two *= 2
                cc //= 2
            if c != 0:
                for blk in self.blocks:
                    if blk.kind == "odd2" and blk.q == two:
                        t_inv = pow(blk.data, -1, blk.q)
                        x[blk.positions[0]] = (blk.q // 2) * t_inv % blk.q
            else:
                # c = 0: D_0 = D and q_0 = 0 on D^{0*} = {0}
                return self.zero()
            return tuple(x)
        for el in self.coset_dcstar(c):
            if self.smul(2, el) == self.zero():
                return el
        raise InternalInconsistency("no 2-torsion base point found in D^{c*}")

    def q_c(self, c: int, gamma: Element, x_c: Element | None = None) -> Fraction:
        """q_c(gamma) = c*q(mu) + b(x_c, mu) for gamma = x_c + c*mu.

        Well defined for any base point x_c in D^{c*}; different base
        points shift q_c by a constant.
        """
        if x_c is None:
            x_c = self.canonical_xc(c)
        target = self.sub(gamma, x_c)
        for mu in self.elements():
            if self.smul(c, mu) == target:
                return frac1(c * self.q(mu) + self.b(x_c, mu))
        raise ValueError("gamma - x_c is not a multiple of c")

    # -- p-parts -----------------------------------------------------------------

    def p_part_decompose(self):
        """Orthogonal splitting D = (+) D_p over primes p dividing |D|.

        Returns a list of (p, part, embed) where embed maps part elements
        into D.  The parts of distinct primes are automatically orthogonal.
        """
        primes = sorted(factorize(self.order))
        out = []
        for p in primes:
            positions = [i for i, d in enumerate(self.orders) if d % p == 0]
            mult = []
            orders_p = []
            for i in positions:
                d = self.orders[i]
                pe = p ** factorize(d).get(p, 0)
                mult.append(d // pe)
                orders_p.append(pe)
            gens = [tuple((mult[j] if i == positions[j] else 0) for i in range(self.rank)) for j in range(len(positions))]
            q_gen = [self.q(g) for g in gens]
            b_gen = [[self.b(g1, g2) if g1 != g2 else frac1(2 * self.q(g1)) for g2 in gens] for g1 in gens]
            part = DiscriminantForm(orders_p, q_gen, b_gen)
            out.append((p, part, PartEmbedding(self, part, gens)))
        return out

    # -- convenience ----------------------------------------------------------------

    def isotropic_elements(self) -> list[Element]:
        if self._isotropic is None:
            self._isotropic = [el for el in self.elements() if self.q(el) == 0]
        return self._isotropic

    def fingerprint(self):
        """Isomorphism-sensitive data: order, level, signature, p-part orders
        and the multiset of scaled Gauss sums at the 2-part."""
        parts = []
        for p, part, _ in self.p_part_decompose():
            entry = (p, part.order, tuple(sorted(part.orders)))
            if p == 2:
                sums = tuple(
                    sorted(cyclo.serialize(part.gauss_sum(c)) for c in range(1, 2 * part.level() + 1) if (2 * part.level()) % c == 0)
                )
                entry = entry + (sums,)
            parts.append(entry)
        return (self.order, self.level(), self.signature(), tuple(parts))

    def validate(self) -> None:
        """Check non-degeneracy and the polarization identity exhaustively."""
        els = self.elements()
        seen = set()
        for gamma in els:
            row = tuple(self.b(gamma, g) for g in _unit_gens(self))
            if row in seen:
                raise InternalInconsistency("bilinear form is degenerate")
            seen.add(row)

    def __repr__(self) -> str:
        name = str(self.symbol) if self.symbol is not None else f"orders {self.orders}"
        return f"DiscriminantForm({name}, |D|={self.order})"


def _unit_gens(form: DiscriminantForm) -> list[Element]:
    return [tuple(1 if i == j else 0 for i in range(form.rank)) for j in range(form.rank)]


class PartEmbedding:
    """Injective homomorphism of one p-part back into the parent form."""

    def __init__(self, parent: DiscriminantForm, part: DiscriminantForm, gen_images: list[Element]):
        self.parent = parent
        self.part = part
        self.gen_images = gen_images

    def apply(self, el: Element) -> Element:
        out = self.parent.zero()
        for a, g in zip(el, self.gen_images):
            if a:
                out = self.parent.add(out, self.parent.smul(a, g))
        return out


_form_registry: dict = {}


def _shared_form(orders, q_gen, b_gen) -> DiscriminantForm:
    key = (orders, q_gen, b_gen)
    if key not in _form_registry:
        _form_registry[key] = DiscriminantForm(orders, q_gen, b_gen)
    return _form_registry[key]


def _signature_from_gauss_sum(form: DiscriminantForm) -> int:
    """Match sum e(q) against sqrt(|D|) e(s/8); raises if no residue fits."""
    total = form.gauss_sum()
    root = sqrt_int(form.order)
    for s in range(8):
        if total == root * e_of(Fraction(s, 8)):
            return s
    raise InternalInconsistency("Gauss sum does not have the expected shape")


# ---------------------------------------------------------------------------
# Construction from genus symbols
# ---------------------------------------------------------------------------


def from_jordan_symbol(symbol) -> DiscriminantForm:
    """Realize a genus symbol as an orthogonal sum of indecomposable blocks.

    Equal symbol strings return the same (immutable) instance so that
    per-form caches are shared.
    """
    if isinstance(symbol, str):
        symbol = JordanSymbol.parse(symbol)
    key = str(symbol)
    if key in _symbol_registry:
        return _symbol_registry[key]
    form = _realize_symbol(symbol)
    _symbol_registry[key] = form
    return form


_symbol_registry: dict[str, DiscriminantForm] = {}


def _realize_symbol(symbol: JordanSymbol) -> DiscriminantForm:
    orders: list[int] = []
    q_gen: list[Fraction] = []
    b_off: dict[tuple[int, int], Fraction] = {}
    blocks: list[Block] = []

    def odd_gen_value(p: int, q: int, sign: int) -> int:
        for a in range(1, p):
            if legendre(2 * a, p) == sign:
                return a
        raise SymbolError(f"no residue with (2a/{p}) = {sign}")

    for comp in symbol.components:
        p = comp.p
        if p != 2:
            signs = [1] * (comp.n - 1) + [comp.sign]
            for s in signs:
                a = odd_gen_value(p, comp.q, s)
                pos = len(orders)
                orders.append(comp.q)
                q_gen.append(frac1(Fraction(a, comp.q)))
                blocks.append(Block("odd", comp.q, (pos,), a))
        elif comp.even:
            signs = [1] * (comp.n // 2 - 1) + [comp.sign]
            for s in signs:
                pos = len(orders)
                orders.extend([comp.q, comp.q])
                val = frac1(Fraction(0 if s > 0 else 1, comp.q))
                q_gen.extend([val, val])
                b_off[(pos, pos + 1)] = frac1(Fraction(1, comp.q))
                blocks.append(Block("even2", comp.q, (pos, pos + 1), s))
        else:
            subs = _split_odd_two_adic(comp.t % 8, comp.sign, comp.n)
            assert subs is not None  # validated at parse time
            for u in subs:
                pos = len(orders)
                orders.append(comp.q)
                q_gen.append(frac1(Fraction(u, 2 * comp.q)))
                blocks.append(Block("odd2", comp.q, (pos,), u))

    k = len(orders)
    b_gen = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        b_gen[i][i] = frac1(2 * q_gen[i])
    for (i, j), v in b_off.items():
        b_gen[i][j] = v
        b_gen[j][i] = v
    form = DiscriminantForm(orders, q_gen, b_gen, blocks=tuple(blocks), symbol=symbol)
    if form.level() != symbol.level():
        raise InternalInconsistency(f"realized level {form.level()} != symbol level {symbol.level()}")
    return form


# ---------------------------------------------------------------------------
# Construction from a Gram matrix
# ---------------------------------------------------------------------------


def from_gram(gram) -> DiscriminantForm:
    """The dual quotient L'/L of an even lattice with the given Gram matrix."""
    g = [[int(x) for x in row] for row in gram]
    n = len(g)
    if any(len(row) != n for row in g):
        raise ValueError("Gram matrix must be square")
    for i in range(n):
        if g[i][i] % 2:
            raise ValueError("Gram matrix must have even diagonal")
        for j in range(n):
            if g[i][j] != g[j][i]:
                raise ValueError("Gram matrix must be symmetric")
    if n == 0:
        return trivial_form()
    u, s, v = smith_normal_form(g)
    diag = [s[i][i] for i in range(n)]
    if any(d == 0 for d in diag):
        raise ValueError("Gram matrix must be non-singular")
    g_inv = rational_inverse(g)
    v_inv = invert_rows(v)
    gens = []
    orders = []
    for j in range(n):
        if diag[j] > 1:
            orders.append(diag[j])
            gens.append(v_inv[j])
    dual_vecs = []
    for row in gens:
        dual_vecs.append([sum(Fraction(g_inv[i][k]) * row[k] for k in range(n)) for i in range(n)])
    q_gen = [frac1(Fraction(sum(dual_vecs[j][i] * row[i] for i in range(n)), 2)) for j, row in enumerate(gens)]
    b_gen = [[Fraction(0)] * len(gens) for _ in gens]
    for a in range(len(gens)):
        for b_ in range(len(gens)):
            if a == b_:
                b_gen[a][a] = frac1(2 * q_gen[a])
            else:
                b_gen[a][b_] = frac1(sum(dual_vecs[a][i] * gens[b_][i] for i in range(n)))
    form = DiscriminantForm(orders, q_gen, b_gen, lattice=Lattice(g, dual_vecs))
    expected = abs_det(diag)
    if form.order != expected:
        raise InternalInconsistency("group order does not match |det G|")
    return form


def invert_rows(v: list[list[int]]) -> list[list[int]]:
    from .intmat import invert_unimodular

    return invert_unimodular(v)


def abs_det(diag: list[int]) -> int:
    out = 1
    for d in diag:
        out *= abs(d)
    return out


@dataclass
class Lattice:
    """Ambient lattice data for forms built from a Gram matrix."""

    gram: list[list[int]]
    dual_vectors: list[list[Fraction]]

    def lift(self, el: Element) -> list[Fraction]:
        n = len(self.gram)
        out = [Fraction(0)] * n
        for a, vec in zip(el, self.dual_vectors):
            if a:
                for i in range(n):
                    out[i] += a * vec[i]
        return out

    def norm(self, vec: list[Fraction]) -> Fraction:
        n = len(self.gram)
        return sum(vec[i] * self.gram[i][j] * vec[j] for i in range(n) for j in range(n))


def trivial_form() -> DiscriminantForm:
    return DiscriminantForm((), (), (), blocks=(), symbol=JordanSymbol([]))


# ---------------------------------------------------------------------------
# Counting elements by norm in homogeneous forms
# ---------------------------------------------------------------------------


def count_norm(symbol, j: int) -> int:
    """Number of elements of norm j/p (resp. j/2, j/4) in p^(eps n),
    2_II^(eps n), 2_t^(eps n); closed form, no enumeration."""
    if isinstance(symbol, str):
        symbol = JordanSymbol.parse(symbol)
    if len(symbol.components) != 1:
        raise ValueError("count_norm expects a single homogeneous component")
    comp = symbol.components[0]
    n, eps = comp.n, comp.sign
    if comp.p != 2:
        p = comp.p
        if comp.q != p:
            raise ValueError("no closed count for exponent > p")
        jj = j % p
        if n % 2 == 0:
            delta = 1 if jj == 0 else 0
            val = Fraction(p) ** (n - 1) + eps * legendre(-1, p) ** (n // 2) * (p * delta - 1) * Fraction(p) ** ((n - 2) // 2)
        else:
            val = Fraction(p) ** (n - 1) + eps * legendre(-1, p) ** ((n - 1) // 2) * legendre(2, p) * legendre(
                jj, p
            ) * Fraction(p) ** ((n - 1) // 2)
    elif comp.even:
        if comp.q != 2:
            raise ValueError("no closed count for exponent > 2")
        val = Fraction(2) ** (n - 1) + eps * (-1) ** (j % 2) * Fraction(2) ** ((n - 2) // 2)
    else:
        if comp.q != 2:
            raise ValueError("no closed count for exponent > 2")
        val = _count_norm_odd2(n, eps, comp.t % 8, j % 4)
    if val.denominator != 1:
        raise InternalInconsistency("norm count is not an integer")
    return int(val)


def _count_norm_odd2(n: int, eps: int, t: int, jj: int) -> Fraction:
    """Closed count for 2_t^(eps n); jj is the norm numerator mod 4."""
    base = Fraction(2) ** (n - 2)
    if n % 2:
        half = Fraction(2) ** ((n - 3) // 2)  # n odd, so n-3 is even
        sgn = eps * _kron2(t)
        if jj == 0:
            return base + sgn * half
        if jj == 2:
            return base - sgn * half
        if jj == 1:
            return base + sgn * (-1) ** ((t - 1) // 2) * half
        return base - sgn * (-1) ** ((t - 1) // 2) * half
    half = Fraction(2) ** ((n - 2) // 2)
    d_t = 1 if t % 4 == 0 else 0
    d_t2 = 1 if (t + 2) % 4 == 0 else 0
    sgn = eps * _kron2((t - 1) % 8)
    if jj == 0:
        return base + sgn * d_t * half
    if jj == 2:
        return base - sgn * d_t * half
    if jj == 1:
        return base + sgn * d_t2 * half
    return base - sgn * d_t2 * half
