"""Truncated chain complexes of modules and the calculus of graded maps.

Grading convention: a graded map of degree ``l`` has components
``phi[i]: P_i -> Q_{i-l}`` (it lowers homological degree by ``l``), so a
cochain ``f: P_m -> 1`` has degree ``m``, a homotopy lifting has degree
``m - 1`` and the diagonal has degree 0.  The Hom differential

    del(phi) = d phi - (-1)^l phi d

raises the degree by one.  Tensor products use the Koszul rule
``d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from gerstenhaber.exactla import Matrix, Subspace, kernel, solve, vec_add
from gerstenhaber.hopf import (
    Algebra,
    HomSpace,
    HopfAlgebra,
    ModuleRep,
    hom_space,
    is_module_hom,
    module_tensor,
    outer_tensor,
)


class ComplexError(ArithmeticError):
    pass


class LiftingError(ComplexError):
    """A degree-by-degree solve found no solution."""

    def __init__(self, msg, degree=None):
        super().__init__(msg)
        self.degree = degree


def sign(k: int) -> int:
    return -1 if k % 2 else 1


def direct_sum(mods: Sequence[ModuleRep], algebra: Algebra, name="sum") -> ModuleRep:
    if not mods:
        return ModuleRep(algebra, 0, lambda a: Matrix.zeros(algebra.field, 0, 0), name=name)
    if len(mods) == 1:
        return mods[0]
    dim = sum(m.dim for m in mods)
    return ModuleRep(algebra, dim, lambda a: Matrix.diagonal_blocks([m.action(a) for m in mods]), name=name)


@dataclass
class Block:
    """Summand ``P_i (x) Q_j`` of a tensor complex in a fixed degree."""

    i: int
    j: int
    offset: int
    dim_left: int
    dim_right: int

    @property
    def dim(self):
        return self.dim_left * self.dim_right


class TruncatedComplex:
    """``P_0 <- P_1 <- ... <- P_N`` with optional augmentation ``P_0 -> unit``.

    ``diffs[l]`` is ``d_l: P_l -> P_{l-1}`` for ``1 <= l <= N`` (``diffs[0]`` is unused).
    Tensor complexes also carry ``blocks[m]`` and their two ``factors``.
    """

    def __init__(self, modules: Sequence[ModuleRep], diffs: Sequence[Matrix | None],
                 unit: ModuleRep | None = None, aug: Matrix | None = None, name: str = "P",
                 blocks=None, factors=None):
        self.modules = list(modules)
        self.diffs = list(diffs)
        if len(self.diffs) != len(self.modules):
            raise ValueError("need one differential slot per module (diffs[0] unused)")
        self.unit = unit
        self.aug = aug
        self.name = name
        self.blocks = blocks
        self.factors = factors

    @property
    def N(self) -> int:
        return len(self.modules) - 1

    @property
    def algebra(self) -> Algebra:
        return self.modules[0].algebra

    @property
    def field(self):
        return self.algebra.field

    def dim(self, l: int) -> int:
        return self.modules[l].dim if 0 <= l <= self.N else 0

    def dims(self) -> list[int]:
        return [m.dim for m in self.modules]

    def d(self, l: int) -> Matrix:
        """``d_l: P_l -> P_{l-1}`` (zero map outside the range)."""
        if 1 <= l <= self.N:
            return self.diffs[l]
        return Matrix.zeros(self.field, self.dim(l - 1), self.dim(l))

    def __repr__(self):
        return f"TruncatedComplex({self.name}, N={self.N}, dims={self.dims()})"

    def truncate(self, N: int) -> "TruncatedComplex":
        N = min(N, self.N)
        return TruncatedComplex(self.modules[:N + 1], self.diffs[:N + 1], self.unit, self.aug, self.name,
                                self.blocks[:N + 1] if self.blocks else None, self.factors)

    def check(self, linearity: bool = True) -> bool:
        """``d^2 = 0``, ``aug d_1 = 0`` and (optionally) module-linearity of every map."""
        for l in range(2, self.N + 1):
            if not (self.d(l - 1) @ self.d(l)).is_zero():
                raise ComplexError(f"{self.name}: d_{l-1} d_{l} != 0")
        if self.aug is not None and self.N >= 1 and not (self.aug @ self.d(1)).is_zero():
            raise ComplexError(f"{self.name}: augmentation does not kill im d_1")
        if linearity:
            for l in range(1, self.N + 1):
                if not is_module_hom(self.d(l), self.modules[l], self.modules[l - 1]):
                    raise ComplexError(f"{self.name}: d_{l} is not module-linear")
            if self.aug is not None and not is_module_hom(self.aug, self.modules[0], self.unit):
                raise ComplexError(f"{self.name}: augmentation is not module-linear")
        return True

    def block(self, m: int, i: int) -> Block:
        for b in self.blocks[m]:
            if b.i == i:
                return b
        raise KeyError((m, i))

    def to_json(self) -> dict:
        F = self.field
        return {
            "name": self.name,
            "N": self.N,
            "dims": self.dims(),
            "differentials": {str(l): matrix_json(self.d(l)) for l in range(1, self.N + 1)},
            "augmentation": matrix_json(self.aug) if self.aug is not None else None,
            "field": F.to_json(),
        }


def matrix_json(M: Matrix) -> dict:
    fmt = M.field.format
    return {"shape": [M.rows, M.cols],
            "entries": [[i, j, fmt(v)] for i, r in enumerate(M.data) for j, v in sorted(r.items())]}


def unit_complex(unit: ModuleRep) -> TruncatedComplex:
    """The unit object as a complex concentrated in degree 0 (target of cochains)."""
    F = unit.field
    return TruncatedComplex([unit], [None], unit, Matrix.identity(F, unit.dim), name="1")


# ---------------------------------------------------------------------------
# graded maps
# ---------------------------------------------------------------------------


class GradedMap:
    """Components ``comps[i]: source_i -> target_{i - degree}`` for ``0 <= i <= top``.

    Missing components are zero.  ``top`` is the largest source degree on
    which the map is known; every equation is only asserted up to there.
    """

    def __init__(self, source: TruncatedComplex, target: TruncatedComplex, degree: int,
                 comps: dict[int, Matrix] | None = None, top: int | None = None, name: str = ""):
        self.source = source
        self.target = target
        self.degree = degree
        self.comps = dict(comps or {})
        if top is None:
            top = min(source.N, target.N + degree)
        self.top = top
        self.name = name

    @property
    def field(self):
        return self.source.field

    def __getitem__(self, i: int) -> Matrix:
        m = self.comps.get(i)
        if m is None:
            return Matrix.zeros(self.field, self.target.dim(i - self.degree), self.source.dim(i))
        return m

    def __repr__(self):
        return f"GradedMap({self.name or '?'}: {self.source.name} -> {self.target.name}, deg={self.degree}, top={self.top})"

    def _like(self, other):
        if self.source is not other.source or self.target is not other.target or self.degree != other.degree:
            raise ComplexError("graded maps with different source/target/degree")

    def __add__(self, other: "GradedMap") -> "GradedMap":
        self._like(other)
        top = min(self.top, other.top)
        return GradedMap(self.source, self.target, self.degree,
                         {i: self[i] + other[i] for i in range(top + 1)}, top)

    def __sub__(self, other):
        return self + other.scale(self.field.neg(self.field.one))

    def scale(self, raw) -> "GradedMap":
        return GradedMap(self.source, self.target, self.degree,
                         {i: m.scale(raw) for i, m in self.comps.items()}, self.top)

    def is_zero(self, upto: int | None = None) -> bool:
        upto = self.top if upto is None else min(upto, self.top)
        return all(self[i].is_zero() for i in range(upto + 1))

    def first_nonzero(self, upto: int | None = None):
        upto = self.top if upto is None else min(upto, self.top)
        for i in range(upto + 1):
            if not self[i].is_zero():
                return i
        return None

    def restrict(self, top: int) -> "GradedMap":
        top = min(top, self.top)
        return GradedMap(self.source, self.target, self.degree,
                         {i: m for i, m in self.comps.items() if i <= top}, top, self.name)

    def then(self, after: "GradedMap") -> "GradedMap":
        """Composite ``after o self``."""
        if after.source is not self.target:
            raise ComplexError("composition of non-composable graded maps")
        deg = self.degree + after.degree
        top = min(self.top, after.top + self.degree)
        comps = {}
        for i in range(top + 1):
            a = self[i]
            if a.is_zero():
                continue
            comps[i] = after[i - self.degree] @ a
        return GradedMap(self.source, after.target, deg, comps, top)

    def to_json(self) -> dict:
        return {"name": self.name, "degree": self.degree, "top": self.top,
                "components": {str(i): matrix_json(m) for i, m in sorted(self.comps.items()) if not m.is_zero()}}


def identity_map(P: TruncatedComplex) -> GradedMap:
    F = P.field
    return GradedMap(P, P, 0, {i: Matrix.identity(F, P.dim(i)) for i in range(P.N + 1)}, P.N, "id")


def augmentation_map(P: TruncatedComplex, U: TruncatedComplex | None = None) -> GradedMap:
    """``mu_P`` as a degree-0 map into the unit complex."""
    U = U or unit_complex(P.unit)
    return GradedMap(P, U, 0, {0: P.aug}, P.N, "mu")


def cochain_map(P: TruncatedComplex, degree: int, comp: Matrix, U: TruncatedComplex | None = None,
                name="f") -> GradedMap:
    """A cochain ``P_degree -> unit`` as a graded map into the unit complex."""
    U = U or unit_complex(P.unit)
    return GradedMap(P, U, degree, {degree: comp}, P.N, name)


def hom_differential(phi: GradedMap) -> GradedMap:
    """``d phi - (-1)^l phi d``, of degree ``l + 1``."""
    P, Q, l = phi.source, phi.target, phi.degree
    s = sign(l)
    F = phi.field
    comps = {}
    for i in range(phi.top + 1):
        t = i - l - 1
        term = Q.d(i - l) @ phi[i] if 0 <= t else None
        if i >= 1:
            back = phi[i - 1] @ P.d(i)
            if s < 0:
                term = back if term is None else term + back
            else:
                term = back.scale(F.neg(F.one)) if term is None else term - back
        if term is not None and not term.is_zero():
            comps[i] = term
    return GradedMap(P, Q, l + 1, comps, phi.top)


# ---------------------------------------------------------------------------
# tensor complexes
# ---------------------------------------------------------------------------


def tensor_complex(P: TruncatedComplex, Q: TruncatedComplex, hopf: HopfAlgebra | None = None,
                   outer: Algebra | None = None, N: int | None = None, name: str | None = None) -> TruncatedComplex:
    """``P (x) Q`` with Koszul differential.

    Module structure: via the coproduct of ``hopf`` (modules over the same
    Hopf algebra), or factorwise over ``outer = A (x) B`` (the resolution of
    k over a tensor product of algebras).
    """
    if (hopf is None) == (outer is None):
        raise ComplexError("tensor_complex needs exactly one of hopf= or outer=")
    F = P.field
    # beyond min(P.N, Q.N) some summands P_i (x) Q_j would be missing
    N = min(P.N, Q.N) if N is None else min(N, P.N, Q.N)
    alg = hopf.algebra if hopf is not None else outer

    def tmod(M, Nn):
        return module_tensor(M, Nn, hopf) if hopf is not None else outer_tensor(M, Nn, outer)

    modules, blocks, summands = [], [], []
    for m in range(N + 1):
        blist, mods, off = [], [], 0
        for i in range(m + 1):
            j = m - i
            if i > P.N or j > Q.N:
                continue
            b = Block(i, j, off, P.dim(i), Q.dim(j))
            blist.append(b)
            mods.append(tmod(P.modules[i], Q.modules[j]))
            off += b.dim
        blocks.append(blist)
        summands.append(mods)
        modules.append(direct_sum(mods, alg, name=f"({P.name}(x){Q.name})_{m}"))
    diffs: list[Matrix | None] = [None]
    for m in range(1, N + 1):
        D = Matrix.zeros(F, modules[m - 1].dim, modules[m].dim)
        tgt = {b.i: b for b in blocks[m - 1]}
        for b in blocks[m]:
            if b.i >= 1 and (b.i - 1) in tgt:
                part = P.d(b.i).kron(Matrix.identity(F, b.dim_right))
                _place(D, part, tgt[b.i - 1].offset, b.offset)
            if b.j >= 1 and b.i in tgt:
                part = Matrix.identity(F, b.dim_left).kron(Q.d(b.j))
                if b.i % 2:
                    part = -part
                _place(D, part, tgt[b.i].offset, b.offset)
        diffs.append(D)
    aug = None
    unit = None
    if P.aug is not None and Q.aug is not None:
        if P.unit.dim != 1 or Q.unit.dim != 1:
            raise ComplexError("tensor augmentation needs one-dimensional units")
        aug = P.aug.kron(Q.aug)
        if hopf is not None:
            unit = P.unit
        else:
            unit = outer_tensor(P.unit, Q.unit, outer, name="k")
    T = TruncatedComplex(modules, diffs, unit, aug, name or f"{P.name}(x){Q.name}", blocks, (P, Q))
    T.summands = summands
    return T


def _place(D: Matrix, part: Matrix, r0: int, c0: int):
    for i, r in enumerate(part.data):
        if r:
            row = D.data[r0 + i]
            for j, v in r.items():
                row[c0 + j] = v


def contract_left(f: GradedMap, PQ: TruncatedComplex) -> GradedMap:
    """``f (x) 1``: ``(P (x) Q) -> 1 (x) Q = Q`` for a cochain ``f: P -> 1`` with 1-dim unit."""
    P, Q = PQ.factors
    if f.source is not P:
        raise ComplexError("contract_left: cochain is not on the left factor")
    F = PQ.field
    m = f.degree
    fm = f[m]
    comps = {}
    top = min(PQ.N, Q.N + m)
    for l in range(m, top + 1):
        try:
            b = PQ.block(l, m)
        except KeyError:
            continue
        M = Matrix.zeros(F, Q.dim(l - m), PQ.dim(l))
        _place(M, fm.kron(Matrix.identity(F, b.dim_right)), 0, b.offset)
        comps[l] = M
    return GradedMap(PQ, Q, m, comps, top)


def contract_right(f: GradedMap, PQ: TruncatedComplex) -> GradedMap:
    """``1 (x) f`` with Koszul sign: ``x (x) y -> (-1)^(|f||x|) x f(y)``."""
    P, Q = PQ.factors
    if f.source is not Q:
        raise ComplexError("contract_right: cochain is not on the right factor")
    F = PQ.field
    m = f.degree
    fm = f[m]
    comps = {}
    top = min(PQ.N, P.N + m)
    for l in range(m, top + 1):
        i = l - m
        try:
            b = PQ.block(l, i)
        except KeyError:
            continue
        part = Matrix.identity(F, b.dim_left).kron(fm)
        if (m * i) % 2:
            part = -part
        M = Matrix.zeros(F, P.dim(i), PQ.dim(l))
        _place(M, part, 0, b.offset)
        comps[l] = M
    return GradedMap(PQ, P, m, comps, top)


def sigma_map(PP: TruncatedComplex) -> GradedMap:
    """Signed transposition ``x (x) y -> (-1)^(|x||y|) y (x) x`` on ``P (x) P``."""
    P, Q = PP.factors
    if P is not Q:
        raise ComplexError("sigma needs a tensor square")
    F = PP.field
    comps = {}
    for m in range(PP.N + 1):
        S = Matrix.zeros(F, PP.dim(m), PP.dim(m))
        for b in PP.blocks[m]:
            tb = PP.block(m, b.j)
            s = F.from_int(sign(b.i * b.j))
            for u in range(b.dim_left):
                for v in range(b.dim_right):
                    S.data[tb.offset + v * b.dim_left + u][b.offset + u * b.dim_right + v] = s
        comps[m] = S
    return GradedMap(PP, PP, 0, comps, PP.N, "sigma")


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------


@dataclass
class HomologyReport:
    dims: list[int]
    augmentation_ok: bool | None
    first_failure: int | None = None

    @property
    def is_resolution(self) -> bool:
        return self.first_failure is None and self.augmentation_ok is not False


def homology_dims(P: TruncatedComplex, maxdeg: int | None = None) -> HomologyReport:
    """``dim ker d_l / im d_{l+1}`` for ``0 <= l < N`` (or up to ``maxdeg``).

    With an augmentation, ``augmentation_ok`` records that ``P_0 -> unit`` is
    onto with kernel ``im d_1``; positive-degree homology must then vanish.
    """
    top = P.N - 1 if maxdeg is None else min(maxdeg, P.N - 1)
    ranks = {l: P.d(l).rank() for l in range(1, top + 2)}
    dims = []
    for l in range(top + 1):
        ker = P.dim(l) - (ranks[l] if l >= 1 else 0)
        dims.append(ker - ranks[l + 1])
    aug_ok = None
    first = None
    if P.aug is not None:
        r = P.aug.rank()
        aug_ok = (r == P.unit.dim) and (P.dim(0) - ranks.get(1, 0) == P.unit.dim)
        for l in range(1, top + 1):
            if dims[l]:
                first = l
                break
    else:
        for l in range(top + 1):
            if dims[l]:
                first = l
                break
    return HomologyReport(dims, aug_ok, first)


# ---------------------------------------------------------------------------
# linear systems over hom spaces
# ---------------------------------------------------------------------------


class HomSystem:
    """Linear equations ``sum_k coeff * L_k X_{b(k)} R_k = RHS`` in unknown module maps.

    Each unknown ranges over a :class:`HomSpace`; the system is solved exactly
    over the hom-space coordinates.
    """

    def __init__(self, field):
        self.field = field
        self.unknowns: list[HomSpace] = []
        self.equations: list[tuple[list, Matrix]] = []

    def unknown(self, H: HomSpace) -> int:
        self.unknowns.append(H)
        return len(self.unknowns) - 1

    def equation(self, terms: list[tuple[int, Matrix | None, Matrix | None, int]], rhs: Matrix):
        """``terms`` are ``(unknown, L, R, +-1)`` with ``L``/``R`` None for identity."""
        self.equations.append((terms, rhs))

    def solve(self) -> list[Matrix] | None:
        F = self.field
        add, mul, neg = F.add, F.mul, F.neg
        columns = []
        index = []
        row_off = []
        off = 0
        for terms, rhs in self.equations:
            row_off.append(off)
            off += rhs.rows * rhs.cols
        # L by columns, so that L @ B only touches the nonzero entries of B
        prepared = []
        for terms, rhs in self.equations:
            prepared.append([(k, L.transpose().data if L is not None else None, R, s) for (k, L, R, s) in terms])
        for u, H in enumerate(self.unknowns):
            for t, B in enumerate(H.basis):
                col = {}
                for e, terms in enumerate(prepared):
                    w = self.equations[e][1].cols
                    base = row_off[e]
                    for (k, LT, R, s) in terms:
                        if k != u:
                            continue
                        Y: dict = {}
                        for kk, brow in enumerate(B.data):
                            if not brow:
                                continue
                            if LT is None:
                                for j, b in brow.items():
                                    Y[(kk, j)] = b
                                continue
                            for i, a in LT[kk].items():
                                for j, b in brow.items():
                                    key = (i, j)
                                    p = mul(a, b)
                                    Y[key] = add(Y[key], p) if key in Y else p
                        if R is not None:
                            Z: dict = {}
                            Rd = R.data
                            for (i, kk), y in Y.items():
                                for j, r in Rd[kk].items():
                                    key = (i, j)
                                    p = mul(y, r)
                                    Z[key] = add(Z[key], p) if key in Z else p
                            Y = Z
                        for (i, j), v in Y.items():
                            if s < 0:
                                v = neg(v)
                            key = base + i * w + j
                            col[key] = add(col[key], v) if key in col else v
                columns.append({key: v for key, v in col.items() if not F.is_zero(v)})
                index.append((u, t))
        b = {}
        for e, (terms, rhs) in enumerate(self.equations):
            w = rhs.cols
            for i, r in enumerate(rhs.data):
                for j, v in r.items():
                    b[row_off[e] + i * w + j] = v
        M = Matrix.from_columns(F, columns, off)
        x = solve(M, b)
        if x is None:
            return None
        coeffs: list[dict] = [{} for _ in self.unknowns]
        for c, v in x.items():
            u, t = index[c]
            coeffs[u][t] = v
        return [H.combination(coeffs[u]) for u, H in enumerate(self.unknowns)]


_HOM_CACHE: dict = {}


def cached_hom(M: ModuleRep, N: ModuleRep) -> HomSpace:
    key = (id(M), id(N))
    hit = _HOM_CACHE.get(key)
    if hit is None or hit[0] is not M or hit[1] is not N:
        hit = (M, N, hom_space(M, N))
        _HOM_CACHE[key] = hit
    return hit[2]


def lift_chain_map(P: TruncatedComplex, Q: TruncatedComplex, base: Matrix, top: int | None = None) -> GradedMap:
    """Degree-0 chain map ``phi: P -> Q`` over ``base: unit_P -> unit_Q``.

    Solves ``mu_Q phi_0 = base mu_P`` and ``d phi_l = phi_{l-1} d`` degree by
    degree over hom spaces.  Raises :class:`LiftingError` at the first degree
    with no solution (e.g. when ``Q`` is not exact there).
    """
    F = P.field
    top = min(P.N, Q.N) if top is None else min(top, P.N, Q.N)
    comps = {}
    sys = HomSystem(F)
    u = sys.unknown(cached_hom(P.modules[0], Q.modules[0]))
    sys.equation([(u, Q.aug, None, 1)], base @ P.aug)
    sol = sys.solve()
    if sol is None:
        raise LiftingError("no degree-0 lift of the augmentation map", 0)
    comps[0] = sol[0]
    for l in range(1, top + 1):
        sys = HomSystem(F)
        u = sys.unknown(cached_hom(P.modules[l], Q.modules[l]))
        sys.equation([(u, Q.d(l), None, 1)], comps[l - 1] @ P.d(l))
        sol = sys.solve()
        if sol is None:
            raise LiftingError(f"chain map lifting fails in degree {l}", l)
        comps[l] = sol[0]
    return GradedMap(P, Q, 0, comps, top, "lift")


def solve_null_homotopy(phi: GradedMap, top: int | None = None) -> GradedMap | None:
    """``H`` of degree ``l - 1`` with ``del(H) = phi`` on degrees ``<= top``, or None.

    The first equation landing in target degree 0 is solved jointly with the
    lowest component of ``H``; above it the target's exactness makes a
    degree-by-degree choice sufficient.
    """
    P, Q, l = phi.source, phi.target, phi.degree
    F = P.field
    hdeg = l - 1
    s = sign(hdeg)
    top = phi.top if top is None else min(top, phi.top)
    top = min(top, Q.N + hdeg)
    comps: dict[int, Matrix] = {}
    start = max(hdeg, 0)
    # degrees i < l have phi_i landing in negative degrees (zero); equation at i = max(l,0)
    first = max(l, 0)
    if first > top:
        return GradedMap(P, Q, hdeg, {}, top)
    sys = HomSystem(F)
    terms = []
    if first - 1 >= start and first - 1 - hdeg >= 0:
        u0 = sys.unknown(cached_hom(P.modules[first - 1], Q.modules[first - 1 - hdeg]))
        terms.append((u0, None, P.d(first), -s))
    else:
        u0 = None
    if first - hdeg <= Q.N and first - hdeg >= 0:
        u1 = sys.unknown(cached_hom(P.modules[first], Q.modules[first - hdeg]))
        terms.append((u1, Q.d(first - hdeg), None, 1))
    else:
        u1 = None
    if not terms:
        return GradedMap(P, Q, hdeg, {}, top) if phi[first].is_zero() else None
    sys.equation(terms, phi[first])
    sol = sys.solve()
    if sol is None:
        return None
    if u0 is not None:
        comps[first - 1] = sol[u0]
    if u1 is not None:
        comps[first] = sol[u1]
    for i in range(first + 1, top + 1):
        rhs = phi[i]
        prev = comps.get(i - 1)
        if prev is not None:
            back = prev @ P.d(i)
            rhs = rhs + back if s > 0 else rhs - back
        sys = HomSystem(F)
        u = sys.unknown(cached_hom(P.modules[i], Q.modules[i - hdeg]))
        sys.equation([(u, Q.d(i - hdeg), None, 1)], rhs)
        sol = sys.solve()
        if sol is None:
            return None
        comps[i] = sol[0]
    H = GradedMap(P, Q, hdeg, comps, top, "H")
    check = hom_differential(H)
    diff = check - phi.restrict(top)
    if not diff.is_zero():
        raise ComplexError("null-homotopy substitution check failed")
    return H


# ---------------------------------------------------------------------------
# cochain complexes Hom_A(P, M)
# ---------------------------------------------------------------------------


class CochainComplex:
    """``Hom_A(P_l, M)`` with coboundary ``h -> h d_{l+1}``, in flattened-matrix coordinates."""

    def __init__(self, P: TruncatedComplex, M: ModuleRep, maxdeg: int):
        if maxdeg + 1 > P.N:
            raise ComplexError(f"cohomology up to degree {maxdeg} needs the complex up to degree {maxdeg + 1}")
        self.P = P
        self.M = M
        self.maxdeg = maxdeg
        self.spaces = [cached_hom(P.modules[l], M) for l in range(maxdeg + 2)]

    @property
    def field(self):
        return self.P.field

    def coboundary(self, h: Matrix, l: int) -> Matrix:
        return h @ self.P.d(l + 1)

    @cached_property
    def cocycles(self) -> list[Subspace]:
        out = []
        for l in range(self.maxdeg + 1):
            H = self.spaces[l]
            d = self.P.d(l + 1)
            cols = [HomSpace.flatten(B @ d) for B in H.basis]
            K = kernel(Matrix.from_columns(self.field, cols, self.M.dim * self.P.dim(l + 1)))
            vecs = []
            for kv in K.basis:
                vec = {}
                for t, c in kv.items():
                    vec = vec_add(self.field, vec, H.subspace.basis[t], c)
                vecs.append(vec)
            out.append(Subspace.span(self.field, self.M.dim * self.P.dim(l), vecs))
        return out

    @cached_property
    def coboundaries(self) -> list[Subspace]:
        out = [Subspace.span(self.field, self.M.dim * self.P.dim(0), [])]
        for l in range(1, self.maxdeg + 1):
            d = self.P.d(l)
            vecs = [HomSpace.flatten(B @ d) for B in self.spaces[l - 1].basis]
            out.append(Subspace.span(self.field, self.M.dim * self.P.dim(l), vecs))
        return out

    def dims(self) -> list[int]:
        return [self.cocycles[l].dim - self.coboundaries[l].dim for l in range(self.maxdeg + 1)]

    def representatives(self, l: int) -> list[Matrix]:
        """Cocycles whose classes form a basis of ``H^l``."""
        B = self.coboundaries[l]
        pivots = {c: dict(r) for c, r in B._pivots.items()}
        from gerstenhaber.exactla import insert_row
        reps = []
        for z in self.cocycles[l].basis:
            if insert_row(pivots, z, self.field):
                reps.append(self.spaces[l].to_matrix(z))
        return reps

    def is_cocycle(self, h: Matrix, l: int) -> bool:
        return self.coboundary(h, l).is_zero()

    def coboundary_witness(self, h: Matrix, l: int) -> Matrix | None:
        """``w`` in ``Hom(P_{l-1}, M)`` with ``w d_l = h``, or None if ``h`` is not a coboundary."""
        if l == 0:
            return Matrix.zeros(self.field, self.M.dim, 0) if h.is_zero() else None
        sys = HomSystem(self.field)
        u = sys.unknown(self.spaces[l - 1])
        sys.equation([(u, None, self.P.d(l), 1)], h)
        sol = sys.solve()
        return None if sol is None else sol[0]

    def class_coordinates(self, h: Matrix, l: int) -> dict | None:
        """Coordinates of the class of cocycle ``h`` in the basis of :meth:`representatives`."""
        reps = self.representatives(l)
        F = self.field
        cols = [HomSpace.flatten(r) for r in reps] + self.coboundaries[l].basis
        sol = solve(Matrix.from_columns(F, cols, self.M.dim * self.P.dim(l)), HomSpace.flatten(h))
        if sol is None:
            return None
        return {k: v for k, v in sol.items() if k < len(reps)}


def random_graded_map(source: TruncatedComplex, target: TruncatedComplex, degree: int, top: int,
                      rng, spread: int = 2, name: str = "K") -> GradedMap:
    """Module-linear graded map with small random integer coordinates in each hom space."""
    F = source.field
    comps = {}
    for i in range(top + 1):
        j = i - degree
        if not 0 <= j <= target.N:
            continue
        H = cached_hom(source.modules[i], target.modules[j])
        coeffs = {t: F.from_int(rng.randint(-spread, spread)) for t in range(H.dim)}
        coeffs = {t: c for t, c in coeffs.items() if not F.is_zero(c)}
        if coeffs:
            comps[i] = H.combination(coeffs)
    return GradedMap(source, target, degree, comps, top, name)
