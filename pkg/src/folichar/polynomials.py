"""Sparse multivariate polynomials over Q or Q(alpha), with monomial orders.

A :class:`VarSpace` fixes the ambient variables: an x-block, an optional
y-block of equal length (the conormal directions), and auxiliary variables
used internally by elimination tricks.  Polynomials are dicts mapping
exponent tuples (one slot per variable, x-block first, then y, then aux)
to nonzero scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import SpaceMismatch
from .scalars import NFElement, scalar_inverse

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# variable spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VarSpace:
    """Named coordinate block structure shared by all objects of a session."""

    x_vars: tuple
    y_vars: tuple = ()
    aux_vars: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "x_vars", tuple(self.x_vars))
        object.__setattr__(self, "y_vars", tuple(self.y_vars))
        object.__setattr__(self, "aux_vars", tuple(self.aux_vars))
        names = self.all_vars
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct: {names}")
        if self.y_vars and len(self.y_vars) != len(self.x_vars):
            raise ValueError("y-block must be empty or match the x-block length")

    @property
    def all_vars(self):
        return self.x_vars + self.y_vars + self.aux_vars

    @property
    def nvars(self):
        return len(self.x_vars) + len(self.y_vars) + len(self.aux_vars)

    @property
    def n(self):
        return len(self.x_vars)

    @property
    def x_indices(self):
        return tuple(range(len(self.x_vars)))

    @property
    def y_indices(self):
        nx = len(self.x_vars)
        return tuple(range(nx, nx + len(self.y_vars)))

    def index(self, name):
        try:
            return self.all_vars.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r} in {self}") from None

    def doubled(self):
        """Adjoin the conormal y-block (y<i> paired with x<i> by position)."""
        if self.y_vars:
            return self
        ys = []
        for i, xn in enumerate(self.x_vars):
            yn = "y" + xn[1:] if xn.startswith("x") and xn[1:].isdigit() else f"y{i + 1}"
            ys.append(yn)
        return VarSpace(self.x_vars, tuple(ys), self.aux_vars)

    def x_only(self):
        return VarSpace(self.x_vars, (), ())

    def with_aux(self, extra):
        return VarSpace(self.x_vars, self.y_vars, self.aux_vars + tuple(extra))

    def restrict(self, names):
        keep = set(names)
        return VarSpace(
            tuple(v for v in self.x_vars if v in keep),
            tuple(v for v in self.y_vars if v in keep),
            tuple(v for v in self.aux_vars if v in keep),
        )

    def fresh_aux(self, stem):
        existing = set(self.all_vars)
        name = stem
        k = 0
        while name in existing:
            k += 1
            name = f"{stem}{k}"
        return name

    def __str__(self):
        blocks = [",".join(self.x_vars)]
        if self.y_vars:
            blocks.append(",".join(self.y_vars))
        if self.aux_vars:
            blocks.append(",".join(self.aux_vars))
        return "(" + " | ".join(blocks) + ")"


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------

def _grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


class MonomialOrder:
    """Total order on exponent tuples; larger key means larger monomial."""

    __slots__ = ("name", "blocks")

    def __init__(self, name, blocks=None):
        self.name = name
        self.blocks = blocks  # tuple of index tuples, compared left to right

    def key(self, exp):
        if self.name == "lex":
            return exp
        if self.name == "grevlex":
            return _grevlex_key(exp)
        return tuple(_grevlex_key(tuple(exp[i] for i in blk)) for blk in self.blocks)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.name == other.name
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.name, self.blocks))

    def __repr__(self):
        return f"MonomialOrder({self.name})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order_xy(space):
    """x-block over y-block (and aux last): eliminates the x-block."""
    nx = len(space.x_vars)
    rest = tuple(range(nx, space.nvars))
    return MonomialOrder("block", (tuple(range(nx)), rest))


def elimination_order(space, eliminate_indices):
    """Block order placing the eliminated variables in the leading block."""
    elim = tuple(sorted(eliminate_indices))
    keep = tuple(i for i in range(space.nvars) if i not in set(elim))
    return MonomialOrder("block", (elim, keep))


def order_from_name(name, space):
    if name == "grevlex":
        return GREVLEX
    if name == "lex":
        return LEX
    if name == "block":
        return block_order_xy(space)
    raise ValueError(f"unknown monomial order {name!r}")


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class MultiPoly:
    """Immutable sparse polynomial over a :class:`VarSpace`."""

    __slots__ = ("space", "terms")

    def __init__(self, space, terms=None):
        self.space = space
        if terms is None:
            self.terms = {}
        else:
            self.terms = {e: c for e, c in terms.items() if c}

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, space):
        return cls(space)

    @classmethod
    def constant(cls, space, c):
        c = Fraction(c) if isinstance(c, int) else c
        return cls(space, {(0,) * space.nvars: c} if c else {})

    @classmethod
    def variable(cls, space, name_or_index):
        idx = name_or_index if isinstance(name_or_index, int) else space.index(name_or_index)
        exp = [0] * space.nvars
        exp[idx] = 1
        return cls(space, {tuple(exp): _ONE})

    @classmethod
    def monomial(cls, space, exp, coeff=_ONE):
        coeff = Fraction(coeff) if isinstance(coeff, int) else coeff
        return cls(space, {tuple(exp): coeff} if coeff else {})

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.terms:
            return _ZERO
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if not any(e):
                return c
        raise ValueError(f"{self} is not constant")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, NFElement)):
            other = MultiPoly.constant(self.space, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if self.space != other.space:
            raise SpaceMismatch(f"{self.space} vs {other.space}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, NFElement)):
            other = MultiPoly.constant(self.space, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.space, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, NFElement)):
            other = MultiPoly.constant(self.space, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NFElement)):
            if not other:
                return MultiPoly.zero(self.space)
            return MultiPoly(self.space, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, _ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly(self.space, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * scalar_inverse(scalar)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers take nonnegative integer exponents")
        out = MultiPoly.constant(self.space, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- calculus ------------------------------------------------------------

    def partial(self, var):
        """Partial derivative with respect to a variable name or index."""
        idx = var if isinstance(var, int) else self.space.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[idx]
            if k:
                ne = e[:idx] + (k - 1,) + e[idx + 1:]
                out[ne] = out.get(ne, _ZERO) + k * c
        return MultiPoly(self.space, out)

    def substitute(self, mapping):
        """Substitute variables (by index or name) with polynomials or scalars."""
        subs = {}
        for k, v in mapping.items():
            idx = k if isinstance(k, int) else self.space.index(k)
            if isinstance(v, (int, Fraction, NFElement)):
                v = MultiPoly.constant(self.space, v)
            subs[idx] = v
        out = MultiPoly.zero(self.space)
        for e, c in self.terms.items():
            term = MultiPoly.constant(self.space, c)
            rest = [0] * self.space.nvars
            for i, k in enumerate(e):
                if not k:
                    continue
                if i in subs:
                    term = term * subs[i] ** k
                else:
                    rest[i] = k
            out = out + term * MultiPoly.monomial(self.space, tuple(rest))
        return out

    def evaluate(self, point):
        """Evaluate at a full point given as a mapping name/index -> scalar."""
        res = self.substitute(point)
        if not res.is_constant():
            raise ValueError("evaluation left free variables")
        return res.constant_value()

    # -- degrees and parts -----------------------------------------------------

    def degree(self, indices=None):
        """Total degree (or degree in the given variable indices); -1 for 0."""
        if not self.terms:
            return -1
        if indices is None:
            return max(sum(e) for e in self.terms)
        idx = set(indices)
        return max(sum(v for i, v in enumerate(e) if i in idx) for e in self.terms)

    def homogeneous_part(self, d, indices=None):
        idx = None if indices is None else set(indices)
        out = {}
        for e, c in self.terms.items():
            deg = sum(e) if idx is None else sum(v for i, v in enumerate(e) if i in idx)
            if deg == d:
                out[e] = c
        return MultiPoly(self.space, out)

    def homogeneous_parts(self, indices=None):
        """Decomposition into homogeneous parts, as a degree -> poly dict."""
        idx = None if indices is None else set(indices)
        buckets = {}
        for e, c in self.terms.items():
            deg = sum(e) if idx is None else sum(v for i, v in enumerate(e) if i in idx)
            buckets.setdefault(deg, {})[e] = c
        return {d: MultiPoly(self.space, t) for d, t in sorted(buckets.items())}

    def involves(self, indices):
        idx = set(indices)
        return any(e[i] for e in self.terms for i in idx)

    def support_indices(self):
        out = set()
        for e in self.terms:
            out.update(i for i, v in enumerate(e) if v)
        return out

    # -- leading data ----------------------------------------------------------

    def leading(self, order=GREVLEX):
        """(exponent, coefficient) of the largest monomial; error on zero."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def monic(self, order=GREVLEX):
        if not self.terms:
            return self
        _, c = self.leading(order)
        if c == 1:
            return self
        return self * scalar_inverse(c)

    def sorted_terms(self, order=GREVLEX):
        return sorted(self.terms.items(), key=lambda ec: order.key(ec[0]), reverse=True)

    # -- space transport ---------------------------------------------------------

    def lift_to(self, space):
        """Reinterpret in a larger space containing the same variable names."""
        if space == self.space:
            return self
        pos = [space.index(v) for v in self.space.all_vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * space.nvars
            for i, k in enumerate(e):
                ne[pos[i]] = k
            out[tuple(ne)] = c
        return MultiPoly(space, out)

    def restrict_to(self, space):
        """Project onto a subspace; fails if a live variable is dropped."""
        if space == self.space:
            return self
        keep = {v: i for i, v in enumerate(space.all_vars)}
        out = {}
        for e, c in self.terms.items():
            ne = [0] * space.nvars
            for i, k in enumerate(e):
                if not k:
                    continue
                name = self.space.all_vars[i]
                if name not in keep:
                    raise SpaceMismatch(f"variable {name} is used but absent from {space}")
                ne[keep[name]] = k
            out[tuple(ne)] = c
        return MultiPoly(space, out)

    # -- display -------------------------------------------------------------

    @staticmethod
    def _coeff_str(c):
        if isinstance(c, NFElement) and not c.is_rational():
            return f"({c})"
        return str(c)

    def to_str(self, order=GREVLEX):
        if not self.terms:
            return "0"
        names = self.space.all_vars
        chunks = []
        for e, c in self.sorted_terms(order):
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(names[i])
                elif k > 1:
                    factors.append(f"{names[i]}^{k}")
            mono = "*".join(factors)
            if not mono:
                chunks.append(self._coeff_str(c))
            elif isinstance(c, NFElement) and not c.is_rational():
                chunks.append(f"({c})*{mono}")
            elif c == 1:
                chunks.append(mono)
            elif c == -1:
                chunks.append(f"-{mono}")
            else:
                chunks.append(f"{c}*{mono}")
        out = " + ".join(chunks)
        return out.replace("+ -", "- ")

    __str__ = to_str

    def __repr__(self):
        return f"<{self.to_str()}>"


def multigrade_decompose(f, order=GREVLEX):
    """Split a polynomial into its monomial summands, largest first."""
    return [
        MultiPoly.monomial(f.space, e, c) for e, c in f.sorted_terms(order)
    ]
