"""Induction ``F(U) = A^e (x)_A U`` and its monoidal structure.

A is a subalgebra of ``A^e = A (x) A^op`` through ``delta(a) = sum a_1 (x) S(a_2)``.
Induced modules and bimodule tensor products ``M (x)_A N`` are stored as
explicit quotients (quotient map ``q`` plus a section ``s`` with ``q s = 1``),
so every map in sight is a matrix and every diagram is a matrix identity.

The transported resolution ``P' = F(P)`` of A carries the diagonal
``eta^{-1} F(Delta)``, and homotopy liftings are transported along with it.
The module ends by comparing ``Ext_{A^e}(A, A)`` with ``Ext_A(k, A^ad)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from gerstenhaber.complexes import (
    Block,
    CochainComplex,
    GradedMap,
    TruncatedComplex,
    direct_sum,
    hom_differential,
    homology_dims,
)
from gerstenhaber.exactla import Matrix, Subspace, solve_matrix
from gerstenhaber.hopf import (
    HopfAlgebra,
    ModuleRep,
    adjoint_module,
    bimodule_regular,
    delta_embed,
    enveloping,
    is_module_hom,
    module_tensor,
    regular_module,
    tensor_vectors,
    trivial_module,
)


class FunctorError(ArithmeticError):
    pass


@dataclass
class Quotient:
    """``q: F^ambient -> F^dim`` and a section ``s`` (standard vectors on non-pivot columns)."""

    q: Matrix
    s: Matrix
    relations: Subspace

    @property
    def dim(self):
        return self.q.rows


def quotient(F, ambient: int, relations) -> Quotient:
    R = Subspace.span(F, ambient, relations)
    keep = R.complement_columns()
    pos = {c: k for k, c in enumerate(keep)}
    neg = F.neg
    cols = []
    for c in range(ambient):
        if c in pos:
            cols.append({pos[c]: F.one})
        else:
            row = R._pivots[c]
            cols.append({pos[j]: neg(v) for j, v in row.items() if j != c})
    q = Matrix.from_columns(F, cols, len(keep))
    s = Matrix.from_columns(F, [{c: F.one} for c in keep], ambient)
    return Quotient(q, s, R)


def descends(T: Matrix, Q: Quotient) -> bool:
    """Does ``T`` (defined on the ambient space) vanish on the relations?"""
    return T @ Q.s @ Q.q == T


class Envelope:
    """``A^e`` with the embedding ``delta``; caches the A^e-modules built over one Hopf algebra."""

    def __init__(self, H: HopfAlgebra, max_n: int | None = None):
        if max_n is not None and H.kind.get("type") == "taft" and H.kind["n"] > max_n:
            raise FunctorError(f"A^e computations are gated to n <= {max_n} (dim A^e = n^4)")
        self.H = H
        self.A = H.algebra
        self.F = H.field
        self.d = H.dim
        if self.A.unit != {0: self.F.one}:
            raise FunctorError("the unit of A must be the first basis element")
        self.Ae = enveloping(H)
        self.delta = delta_embed(H)
        self.A_bimod = bimodule_regular(H, self.Ae)
        self.k = trivial_module(H)
        self._induced: dict = {}
        self._tensors: dict = {}
        self._etas: dict = {}

    def left(self, a: int) -> int:
        return a * self.d

    def right(self, b: int) -> int:
        return b

    def induce(self, U: ModuleRep) -> "InducedModule":
        hit = self._induced.get(id(U))
        if hit is None or hit.source is not U:
            hit = induce_module(U, self)
            self._induced[id(U)] = hit
        return hit

    def tensor(self, M: ModuleRep, N: ModuleRep) -> "BimoduleTensor":
        key = (id(M), id(N))
        hit = self._tensors.get(key)
        if hit is None or hit.M is not M or hit.N is not N:
            hit = BimoduleTensor(M, N, self)
            self._tensors[key] = hit
        return hit


# ---------------------------------------------------------------------------
# induced modules
# ---------------------------------------------------------------------------


class InducedModule:
    def __init__(self, source: ModuleRep, carrier: ModuleRep, quot: Quotient, env: Envelope):
        self.source = source
        self.carrier = carrier
        self.quot = quot
        self.env = env

    @property
    def dim(self):
        return self.carrier.dim

    @property
    def q(self):
        return self.quot.q

    @property
    def s(self):
        return self.quot.s

    def element(self, xi: int, u: int) -> dict:
        """Class of ``xi (x) u``."""
        return self.q.column(xi * self.source.dim + u)

    def __repr__(self):
        return f"InducedModule(F({self.source.name}), dim={self.dim})"


def induce_module(U: ModuleRep, env: Envelope) -> InducedModule:
    """Quotient of ``A^e (x) U`` by ``xi delta(a) (x) u - xi (x) a u`` (a over algebra generators)."""
    if U.algebra is not env.A:
        raise FunctorError("induce_module: module is not over the envelope's algebra")
    F, Ae, m = env.F, env.Ae, U.dim
    ambient = Ae.dim * m
    dcols = env.delta.columns()
    rels = []
    if m:
        for a in env.A.generators:
            Ua = U.action(a).columns()
            for xi in range(Ae.dim):
                xd = Ae.mul({xi: F.one}, dcols[a])
                for u in range(m):
                    v = tensor_vectors(F, xd, {u: F.one}, m)
                    for j, c in Ua[u].items():
                        key = xi * m + j
                        w = F.sub(v.get(key, F.zero), c)
                        if F.is_zero(w):
                            v.pop(key, None)
                        else:
                            v[key] = w
                    if v:
                        rels.append(v)
    Q = quotient(F, ambient, rels)
    ident = Matrix.identity(F, m)

    def build(z):
        return Q.q @ Ae.left_matrix(z).kron(ident) @ Q.s

    carrier = ModuleRep(Ae, Q.dim, build, name=f"F({U.name})")
    return InducedModule(U, carrier, Q, env)


def induce_map(f: Matrix, FU: InducedModule, FV: InducedModule, check: bool = True) -> Matrix:
    """``F(f)``: ``xi (x) u -> xi (x) f(u)``."""
    if check and not is_module_hom(f, FU.source, FV.source):
        raise FunctorError("induce_map: f is not module-linear")
    F = FU.env.F
    lifted = Matrix.identity(F, FU.env.Ae.dim).kron(f)
    return FV.q @ lifted @ FU.s


# ---------------------------------------------------------------------------
# tensor products over A of A^e-modules
# ---------------------------------------------------------------------------


class BimoduleTensor:
    """``M (x)_A N``: quotient of ``M (x) N`` by ``m a (x) n - m (x) a n``.

    A^e acts by ``(a (x) b)(m (x) n) = a m (x) n b``.
    """

    def __init__(self, M: ModuleRep, N: ModuleRep, env: Envelope):
        self.M, self.N, self.env = M, N, env
        F = env.F
        m, n = M.dim, N.dim
        rels = []
        for a in env.A.generators:
            Mr = M.action(env.right(a)).columns()
            Nl = N.action(env.left(a)).columns()
            for i in range(m):
                for j in range(n):
                    v = tensor_vectors(F, Mr[i], {j: F.one}, n)
                    for k, c in tensor_vectors(F, {i: F.one}, Nl[j], n).items():
                        w = F.sub(v.get(k, F.zero), c)
                        if F.is_zero(w):
                            v.pop(k, None)
                        else:
                            v[k] = w
                    if v:
                        rels.append(v)
        self.quot = quotient(F, m * n, rels)
        d = env.d
        Q = self.quot

        def build(z):
            a, b = divmod(z, d)
            return Q.q @ M.action(env.left(a)).kron(N.action(env.right(b))) @ Q.s

        self.carrier = ModuleRep(env.Ae, Q.dim, build, name=f"{M.name}(x)_A{N.name}")

    @property
    def dim(self):
        return self.carrier.dim

    @property
    def q(self):
        return self.quot.q

    @property
    def s(self):
        return self.quot.s

    def element(self, x: dict, y: dict) -> dict:
        return self.q.apply(tensor_vectors(self.env.F, x, y, self.N.dim))


def tensor_maps(f: Matrix, g: Matrix, src: BimoduleTensor, dst: BimoduleTensor) -> Matrix:
    """``f (x)_A g`` between bimodule tensor products."""
    return dst.q @ f.kron(g) @ src.s


def left_unit(M: ModuleRep, env: Envelope) -> Matrix:
    """``A (x)_A M -> M``, ``a (x) m -> (a (x) 1) m``."""
    T = env.tensor(env.A_bimod, M)
    cols = []
    for a in range(env.d):
        act = M.action(env.left(a)).columns()
        cols.extend(act[j] for j in range(M.dim))
    cover = Matrix.from_columns(env.F, cols, M.dim)
    if not descends(cover, T.quot):
        raise FunctorError("left unit map is not well defined")
    return cover @ T.s


def right_unit(M: ModuleRep, env: Envelope) -> Matrix:
    """``M (x)_A A -> M``, ``m (x) a -> (1 (x) a) m``."""
    T = env.tensor(M, env.A_bimod)
    cols = []
    for i in range(M.dim):
        for a in range(env.d):
            cols.append(M.action(env.right(a)).column(i))
    cover = Matrix.from_columns(env.F, cols, M.dim)
    if not descends(cover, T.quot):
        raise FunctorError("right unit map is not well defined")
    return cover @ T.s


def multiplication_map(env: Envelope) -> Matrix:
    """``A (x)_A A -> A``, ``a (x) b -> ab`` (this is also the left unit of A)."""
    return left_unit(env.A_bimod, env)


def phi_map(env: Envelope) -> Matrix:
    """``F(k) -> A``, ``xi (x) 1 -> xi . 1``: the identification of the induced trivial module with A."""
    Fk = env.induce(env.k)
    cover = Matrix.from_columns(env.F, [env.A_bimod.action(z).column(0) for z in range(env.Ae.dim)], env.d)
    if not descends(cover, Fk.quot):
        raise FunctorError("phi is not well defined")
    phi = cover @ Fk.s
    if phi.rank() != env.d or Fk.dim != env.d:
        raise FunctorError("phi is not bijective")
    if not is_module_hom(phi, Fk.carrier, env.A_bimod):
        raise FunctorError("phi is not A^e-linear")
    return phi


def regular_identification(env: Envelope) -> Matrix:
    """``F(A) -> A^e``, ``xi (x) a -> xi delta(a)``; shows F(free) is free."""
    reg = _regular(env)
    FA = env.induce(reg)
    Ae = env.Ae
    dcols = env.delta.columns()
    cols = []
    for xi in range(Ae.dim):
        for a in range(env.d):
            cols.append(Ae.mul({xi: env.F.one}, dcols[a]))
    cover = Matrix.from_columns(env.F, cols, Ae.dim)
    if not descends(cover, FA.quot):
        raise FunctorError("F(A) -> A^e is not well defined")
    return cover @ FA.s


def _regular(env):
    reg = getattr(env, "_reg", None)
    if reg is None:
        reg = env._reg = regular_module(env.A)
    return reg


# ---------------------------------------------------------------------------
# eta
# ---------------------------------------------------------------------------


@dataclass
class EtaMap:
    U: ModuleRep
    V: ModuleRep
    UV: ModuleRep
    source: BimoduleTensor
    target: InducedModule
    matrix: Matrix
    inverse: Matrix
    spanning_rank: int

    def corrupted(self, rng: random.Random) -> "EtaMap":
        """Copy with one entry changed (for fault-injection tests)."""
        F = self.matrix.field
        M = self.matrix.copy()
        i, j = rng.randrange(M.rows), rng.randrange(M.cols)
        M.add_to(i, j, F.one)
        return EtaMap(self.U, self.V, self.UV, self.source, self.target, M, self.inverse, self.spanning_rank)


def eta(U: ModuleRep, V: ModuleRep, env: Envelope, UV: ModuleRep | None = None) -> EtaMap:
    """``F(U) (x)_A F(V) -> F(U (x) V)``, ``((a(x)1)(x)u) (x) ((1(x)b)(x)v) -> (a(x)b)(x)(u(x)v)``.

    Solved from the spanning forms; well-definedness, A^e-linearity and
    bijectivity are checked exactly.
    """
    key = (id(U), id(V), id(UV))
    hit = env._etas.get(key)
    if hit is not None and hit.U is U and hit.V is V:
        return hit
    F, d = env.F, env.d
    UV = UV or module_tensor(U, V, env.H)
    FU, FV, FUV = env.induce(U), env.induce(V), env.induce(UV)
    T = env.tensor(FU.carrier, FV.carrier)
    mu, mv = U.dim, V.dim
    D_cols, T_cols = [], []
    for a in range(d):
        for u in range(mu):
            x = FU.element(env.left(a), u)
            for b in range(d):
                for v in range(mv):
                    y = FV.element(env.right(b), v)
                    D_cols.append(T.element(x, y))
                    T_cols.append(FUV.element(a * d + b, u * mv + v))
    D = Matrix.from_columns(F, D_cols, T.dim)
    Tm = Matrix.from_columns(F, T_cols, FUV.dim)
    r = D.rank()
    if r != T.dim:
        raise FunctorError(f"spanning forms have rank {r} < {T.dim}")
    X = solve_matrix(D.T, Tm.T)
    if X is None:
        raise FunctorError("eta is not well defined on the spanning forms")
    E = X.T
    if E @ D != Tm:
        raise FunctorError("eta does not reproduce its defining values")
    if not is_module_hom(E, T.carrier, FUV.carrier):
        raise FunctorError("eta is not A^e-linear")
    if T.dim != FUV.dim or E.rank() != FUV.dim:
        raise FunctorError("eta is not bijective")
    inv = solve_matrix(E, Matrix.identity(F, FUV.dim))
    out = EtaMap(U, V, UV, T, FUV, E, inv, r)
    env._etas[key] = out
    return out


def naturality_residual(f: Matrix, g: Matrix, U, V, U2, V2, env: Envelope) -> Matrix:
    """``eta_{U2,V2} (F f (x) F g) - F(f (x) g) eta_{U,V}``."""
    e1, e2 = eta(U, V, env), eta(U2, V2, env)
    FU, FV, FU2, FV2 = env.induce(U), env.induce(V), env.induce(U2), env.induce(V2)
    left = e2.matrix @ tensor_maps(induce_map(f, FU, FU2), induce_map(g, FV, FV2), e1.source, e2.source)
    right = induce_map(f.kron(g), e1.target, e2.target, check=False) @ e1.matrix
    return left - right


# ---------------------------------------------------------------------------
# the monoidal axiom
# ---------------------------------------------------------------------------


@dataclass
class MonoidalReport:
    passed: bool
    checks: dict = field(default_factory=dict)
    first_failure: str | None = None
    discrepancy: tuple | None = None


def associator(M, N, L, env: Envelope) -> Matrix:
    """``(M (x)_A N) (x)_A L -> M (x)_A (N (x)_A L)`` through the common cover ``M (x) N (x) L``."""
    F = env.F
    MN, NL = env.tensor(M, N), env.tensor(N, L)
    left, right = env.tensor(MN.carrier, L), env.tensor(M, NL.carrier)
    p1 = left.q @ MN.q.kron(Matrix.identity(F, L.dim))
    p2 = right.q @ Matrix.identity(F, M.dim).kron(NL.q)
    X = solve_matrix(p1.T, p2.T)
    if X is None:
        raise FunctorError("associator is not well defined")
    return X.T


def verify_monoidal(U: ModuleRep, V: ModuleRep, W: ModuleRep, env: Envelope,
                    etas: dict | None = None) -> MonoidalReport:
    """Hexagon for ``eta`` and the two unit triangles; ``etas`` may override (for fault injection)."""
    F, H = env.F, env.H
    etas = etas or {}

    def get_eta(X, Y, XY=None):
        key = (id(X), id(Y))
        return etas.get(key) or eta(X, Y, env, XY)

    UV = module_tensor(U, V, H)
    VW = module_tensor(V, W, H)
    UV_W = module_tensor(UV, W, H)
    U_VW = module_tensor(U, VW, H)
    FU, FV, FW = env.induce(U), env.induce(V), env.induce(W)
    e_uv, e_vw = get_eta(U, V, UV), get_eta(V, W, VW)
    e_uv_w, e_u_vw = get_eta(UV, W, UV_W), get_eta(U, VW, U_VW)
    checks = {}
    # both paths evaluated on the common cover FU (x) FV (x) FW, so every column of every eta is used
    I_u, I_w = Matrix.identity(F, FU.dim), Matrix.identity(F, FW.dim)
    to_left = e_uv.source.q.kron(I_w)      # -> (FU (x)_A FV) (x) FW
    to_right = I_u.kron(e_vw.source.q)     # -> FU (x) (FV (x)_A FW)
    # top: (FU FV) FW -> F(UV) FW -> F((UV)W)
    top = e_uv_w.matrix @ e_uv_w.source.q @ e_uv.matrix.kron(I_w) @ to_left
    # bottom: FU (FV FW) -> FU F(VW) -> F(U(VW))
    bottom = e_u_vw.matrix @ e_u_vw.source.q @ I_u.kron(e_vw.matrix) @ to_right
    # F(associator of modules): (U(x)V)(x)W and U(x)(V(x)W) share the lexicographic basis
    Fa = induce_map(Matrix.identity(F, U.dim * V.dim * W.dim), e_uv_w.target, e_u_vw.target, check=False)
    a = associator(FU.carrier, FV.carrier, FW.carrier, env)
    left = env.tensor(e_uv.source.carrier, FW.carrier)
    right = env.tensor(FU.carrier, e_vw.source.carrier)
    checks["associator"] = a @ left.q @ to_left == right.q @ to_right and a.rank() == a.rows == a.cols
    diff = Fa @ top - bottom
    checks["hexagon"] = diff.is_zero()
    report = MonoidalReport(True, checks)
    if not checks["associator"]:
        report.passed, report.first_failure = False, "associator"
        return report
    if not checks["hexagon"]:
        report.passed = False
        report.first_failure = "hexagon"
        report.discrepancy = _first_entry(diff)
        return report
    phi = phi_map(env)
    for X, FX in ((U, FU), (W, FW)):
        e_1x = get_eta(env.k, X, module_tensor(env.k, X, H))
        lhs = induce_map(Matrix.identity(F, X.dim), e_1x.target, FX, check=False) @ e_1x.matrix
        rhs = left_unit(FX.carrier, env) @ tensor_maps(phi, Matrix.identity(F, FX.dim), e_1x.source,
                                                       env.tensor(env.A_bimod, FX.carrier))
        name = f"left_unit[{X.name}]"
        checks[name] = lhs == rhs
        if not checks[name]:
            report.passed, report.first_failure, report.discrepancy = False, name, _first_entry(lhs - rhs)
            return report
        e_x1 = get_eta(X, env.k, module_tensor(X, env.k, H))
        lhs = induce_map(Matrix.identity(F, X.dim), e_x1.target, FX, check=False) @ e_x1.matrix
        rhs = right_unit(FX.carrier, env) @ tensor_maps(Matrix.identity(F, FX.dim), phi, e_x1.source,
                                                        env.tensor(FX.carrier, env.A_bimod))
        name = f"right_unit[{X.name}]"
        checks[name] = lhs == rhs
        if not checks[name]:
            report.passed, report.first_failure, report.discrepancy = False, name, _first_entry(lhs - rhs)
            return report
    return report


def _first_entry(M: Matrix):
    for i, r in enumerate(M.data):
        for j, v in sorted(r.items()):
            return (i, j, M.field.format(v))
    return None


# ---------------------------------------------------------------------------
# transported resolution and liftings
# ---------------------------------------------------------------------------


class InducedComplex:
    """``P' = F(P)`` augmented to A, and ``P' (x)_A P'`` with its Koszul differential."""

    def __init__(self, P: TruncatedComplex, env: Envelope, splittings=None):
        self.P, self.env = P, env
        self.splittings = splittings
        self.induced = [env.induce(M) for M in P.modules]
        self.phi = phi_map(env)
        Fk = env.induce(P.unit)
        diffs = [None] + [induce_map(P.d(l), self.induced[l], self.induced[l - 1]) for l in range(1, P.N + 1)]
        self.mu_F = induce_map(P.aug, self.induced[0], Fk)
        aug = self.phi @ self.mu_F
        self.complex = TruncatedComplex([I.carrier for I in self.induced], diffs, env.A_bimod, aug, name=f"F({P.name})")
        self._square = None

    def square(self, N: int | None = None) -> TruncatedComplex:
        if self._square is not None:
            return self._square
        env, F = self.env, self.env.F
        Pp = self.complex
        N = Pp.N if N is None else min(N, Pp.N)
        modules, blocks, tens = [], [], []
        for m in range(N + 1):
            blist, mods, tl, off = [], [], [], 0
            for i in range(m + 1):
                T = env.tensor(Pp.modules[i], Pp.modules[m - i])
                blist.append(Block(i, m - i, off, Pp.dim(i), Pp.dim(m - i)))
                mods.append(T.carrier)
                tl.append(T)
                off += T.dim
            blocks.append(blist)
            tens.append(tl)
            modules.append(direct_sum(mods, env.Ae, name=f"(P'(x)P')_{m}"))
        offsets = [[0] for _ in range(N + 1)]
        for m in range(N + 1):
            for T in tens[m]:
                offsets[m].append(offsets[m][-1] + T.dim)
        diffs = [None]
        for m in range(1, N + 1):
            D = Matrix.zeros(F, modules[m - 1].dim, modules[m].dim)
            for i, T in enumerate(tens[m]):
                j = m - i
                if i >= 1:
                    part = tensor_maps(Pp.d(i), Matrix.identity(F, Pp.dim(j)), T, tens[m - 1][i - 1])
                    _place(D, part, offsets[m - 1][i - 1], offsets[m][i])
                if j >= 1:
                    part = tensor_maps(Matrix.identity(F, Pp.dim(i)), Pp.d(j), T, tens[m - 1][i])
                    if i % 2:
                        part = -part
                    _place(D, part, offsets[m - 1][i], offsets[m][i])
            diffs.append(D)
        S = TruncatedComplex(modules, diffs, None, None, name="P'(x)_AP'", blocks=None, factors=(Pp, Pp))
        S.tensors, S.offsets = tens, offsets
        self._square = S
        return S

    def transport_map(self, phi: GradedMap) -> GradedMap:
        """``F(phi)`` for a graded self-map of P."""
        comps = {}
        for i, M in phi.comps.items():
            j = i - phi.degree
            if M.is_zero() or not 0 <= j <= self.P.N:
                continue
            comps[i] = induce_map(M, self.induced[i], self.induced[j], check=False)
        return GradedMap(self.complex, self.complex, phi.degree, comps, phi.top, f"F({phi.name})")

    def transport_cochain(self, f_comp: Matrix, m: int) -> Matrix:
        """``phi F(f)``: ``P'_m -> A``."""
        Fk = self.env.induce(self.P.unit)
        return self.phi @ induce_map(f_comp, self.induced[m], Fk, check=False)

    def transport_diagonal(self, D) -> GradedMap:
        """``eta^{-1} F(Delta)``, block by block."""
        env, F = self.env, self.env.F
        S = self.square(D.top)
        PP = D.PP
        comps = {}
        for l in range(min(D.delta.top, S.N) + 1):
            Dl = D.delta[l]
            M = Matrix.zeros(F, S.dim(l), self.complex.dim(l))
            for k, b in enumerate(PP.blocks[l]):
                rows = Dl.data[b.offset:b.offset + b.dim]
                part = Matrix(F, b.dim, Dl.cols, rows)
                UV = PP.summands[l][k]
                e = eta(self.P.modules[b.i], self.P.modules[b.j], env, UV)
                Fpart = induce_map(part, self.induced[l], env.induce(UV), check=False)
                _place(M, e.inverse @ Fpart, S.offsets[l][k], 0)
            comps[l] = M
        return GradedMap(self.complex, S, 0, comps, min(D.delta.top, S.N), "Delta'")

    def contract(self, f: Matrix, m: int, side: str) -> GradedMap:
        """``f (x) 1`` or ``1 (x) f`` (Koszul sign) from ``P' (x)_A P'`` to ``P'``, via the unit maps."""
        env, F = self.env, self.env.F
        S = self.square()
        Pp = self.complex
        comps = {}
        for l in range(m, S.N + 1):
            i = m if side == "left" else l - m
            j = l - i
            if j > Pp.N or i > Pp.N:
                continue
            T = S.tensors[l][i]
            other = j if side == "left" else i
            if side == "left":
                unit = env.tensor(env.A_bimod, Pp.modules[other])
                part = left_unit(Pp.modules[other], env) @ tensor_maps(f, Matrix.identity(F, Pp.dim(other)), T, unit)
            else:
                unit = env.tensor(Pp.modules[other], env.A_bimod)
                part = right_unit(Pp.modules[other], env) @ tensor_maps(Matrix.identity(F, Pp.dim(other)), f, T, unit)
                if (m * i) % 2:
                    part = -part
            M = Matrix.zeros(F, Pp.dim(other), S.dim(l))
            _place(M, part, 0, S.offsets[l][i])
            comps[l] = M
        return GradedMap(S, Pp, m, comps, S.N)


def _place(D, part, r0, c0):
    for i, r in enumerate(part.data):
        if r:
            row = D.data[r0 + i]
            for j, v in r.items():
                row[c0 + j] = v


@dataclass
class TransportReport:
    entries: list = field(default_factory=list)

    def add(self, equation: str, degree, ok: bool, note: str = ""):
        self.entries.append({"equation": equation, "degree": degree, "residual_zero": bool(ok), "note": note})

    @property
    def passed(self) -> bool:
        return all(e["residual_zero"] for e in self.entries)

    def first_failure(self):
        for e in self.entries:
            if not e["residual_zero"]:
                return e
        return None


def transport_check(f, L, D, env: Envelope, top: int | None = None, IC: InducedComplex | None = None,
                    g=None, Lg=None, splittings=None) -> TransportReport:
    """Apply F to a diagonal and a lifting, then check every equation on the A^e side."""
    from gerstenhaber.bracket import bracket_cochain

    rep = TransportReport()
    IC = IC or InducedComplex(D.P, env, splittings)
    Pp = IC.complex
    top = min(L.top, D.top, Pp.N - 1) if top is None else top
    # P' is a resolution of A
    Pp.check(linearity=True)
    h = homology_dims(Pp, top)
    rep.add("F(P) exact with cokernel A", top, h.is_resolution)
    # projectivity of every P'_l through A^e
    rep.add("F(P_l) projective", top, all(induced_projective(IC, l) for l in range(top + 1)))
    # the diagonal
    Dp = IC.transport_diagonal(D)
    bad = hom_differential(Dp).first_nonzero(top)
    rep.add("Delta' chain map", top, bad is None, "" if bad is None else f"degree {bad}")
    S = IC.square()
    mm = tensor_maps(Pp.aug, Pp.aug, S.tensors[0][0], env.tensor(env.A_bimod, env.A_bimod))
    rep.add("(mu' (x) mu') Delta'_0 = mu'", 0, multiplication_map(env) @ mm @ Dp[0] == Pp.aug)
    # counit equation for psi' = F(psi)
    psi_p = IC.transport_map(D.psi)
    defect = Dp.then(IC.contract(Pp.aug, 0, "left")) - Dp.then(IC.contract(Pp.aug, 0, "right"))
    r = hom_differential(psi_p).restrict(top) - defect.restrict(top)
    rep.add("del(psi') = (mu'(x)1 - 1(x)mu') Delta'", top, r.is_zero(top))
    # lifting equation for F(psi_f)
    m = f.degree
    fp = IC.transport_cochain(f.comp, m)
    psif_p = IC.transport_map(L.psi_f)
    rhs = Dp.then(IC.contract(fp, m, "left")) - Dp.then(IC.contract(fp, m, "right"))
    r = hom_differential(psif_p).restrict(top) - rhs.restrict(top)
    bad = r.first_nonzero(top)
    rep.add("del(F psi_f) = (f'(x)1 - 1(x)f') Delta'", top, bad is None, "" if bad is None else f"degree {bad}")
    # side condition on the A^e side, realised in Hom_{A^e}(P', A)
    C = CochainComplex(Pp, env.A_bimod, top)
    side = Pp.aug @ psif_p[m - 1]
    other = fp @ psi_p[m - 1]
    side = side - other if m % 2 == 1 else side + other
    w = C.coboundary_witness(side, m - 1) if m >= 1 else None
    rep.add("mu' F(psi_f) ~ (-1)^(m+1) f' psi'", m - 1, w is not None)
    # bracket transport
    g, Lg = (f, L) if g is None else (g, Lg)
    n = g.degree
    deg = m + n - 1
    if deg <= top:
        gp = IC.transport_cochain(g.comp, n)
        a = fp @ IC.transport_map(Lg.psi_f)[deg]
        b = gp @ psif_p[deg]
        br = a - b if ((m - 1) * (n - 1)) % 2 == 0 else a + b
        image = IC.transport_cochain(bracket_cochain(L, Lg), deg)
        rep.add("[f',g'] = phi F([f,g])", deg, br == image)
        Cp = CochainComplex(D.P, D.P.unit, deg)
        zero_here = Cp.coboundary_witness(bracket_cochain(L, Lg), deg) is not None
        zero_there = C.coboundary_witness(br, deg) is not None
        rep.add("class([f',g']) zero iff class([f,g]) zero", deg, zero_here == zero_there,
                "zero" if zero_there else "nonzero")
    return rep


def induced_projective(IC: InducedComplex, l: int) -> bool:
    """Split ``F(P_l)`` off A^e using ``F`` of a splitting of ``P_l`` through A and ``F(A) = A^e``."""
    env = IC.env
    if not IC.splittings:
        return False
    sp = IC.splittings[l]
    if sp.free.dim != env.d:
        return False
    F = env.F
    reg = _regular(env)
    FA = env.induce(reg)
    ident = regular_identification(env)
    inv = solve_matrix(ident, Matrix.identity(F, env.Ae.dim))
    FP = IC.induced[l]
    sec = ident @ induce_map(sp.section, FP, FA, check=False)
    proj = induce_map(sp.projection, FA, FP, check=False) @ inv
    if proj @ sec != Matrix.identity(F, FP.dim):
        return False
    Ae_reg = getattr(env, "_Ae_reg", None)
    if Ae_reg is None:
        Ae_reg = env._Ae_reg = regular_module(env.Ae)
    return is_module_hom(sec, FP.carrier, Ae_reg) and is_module_hom(proj, Ae_reg, FP.carrier)


# ---------------------------------------------------------------------------
# Ext over A^e versus cohomology with adjoint coefficients
# ---------------------------------------------------------------------------


@dataclass
class EckmannShapiroReport:
    maxdeg: int
    dims_enveloping: list[int]
    dims_adjoint: list[int]
    dims_free: list[int] | None = None
    embedding: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        same = self.dims_enveloping == self.dims_adjoint
        if self.dims_free is not None:
            same = same and self.dims_free == self.dims_adjoint
        return same and all(self.embedding.values())


def eckmann_shapiro_check(P: TruncatedComplex, env: Envelope, maxdeg: int,
                          IC: InducedComplex | None = None, free: bool = True) -> EckmannShapiroReport:
    """``dim H^i(Hom_{A^e}(F(P), A))`` against ``dim H^i(Hom_A(P, A^ad))``, and the unit-map embedding.

    With ``free``, Ext over A^e is also computed from a free A^e-resolution of A
    built from scratch, which does not go through the induction functor.
    """
    from gerstenhaber.resolutions import module_free_resolution

    IC = IC or InducedComplex(P, env)
    CA = CochainComplex(IC.complex, env.A_bimod, maxdeg)
    ad = adjoint_module(env.H)
    Cad = CochainComplex(P, ad, maxdeg)
    rep = EckmannShapiroReport(maxdeg, CA.dims(), Cad.dims())
    if free:
        Q = module_free_resolution(env.A_bimod, maxdeg + 1, name="F(A^e)")
        if not homology_dims(Q).is_resolution:
            raise FunctorError("free A^e-resolution of A is not exact")
        rep.dims_free = CochainComplex(Q, env.A_bimod, maxdeg).dims()
    unit = Matrix(env.F, env.d, 1, [{0: env.F.one}] + [{} for _ in range(env.d - 1)])
    if not is_module_hom(unit, P.unit, ad):
        raise FunctorError("unit map k -> A^ad is not module-linear")
    Ck = CochainComplex(P, P.unit, maxdeg)
    for l in range(1, maxdeg + 1):
        for k, z in enumerate(Ck.representatives(l)):
            image = unit @ z
            rep.embedding[f"{l}.{k}:cocycle"] = Cad.is_cocycle(image, l)
            rep.embedding[f"{l}.{k}:nonzero"] = Cad.coboundary_witness(image, l) is None
    return rep
