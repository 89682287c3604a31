"""Resolutions of the trivial module and their diagonal maps.

* the periodic resolution of k over a Taft algebra (``P_l = k[x]/(x^n)`` with a
  parity-twisted g-action) and its explicit diagonal with omega-binomial terms;
* the same shape over k[Z/p] = k[u]/(u^p) in characteristic p;
* Koszul tensor products of resolutions and diagonals over tensor products of
  Hopf algebras;
* generic diagonals by chain-map lifting, symmetrized diagonals for
  cocommutative algebras, and power-flatness reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from gerstenhaber.complexes import (
    ComplexError,
    GradedMap,
    TruncatedComplex,
    augmentation_map,
    cached_hom,
    contract_left,
    contract_right,
    hom_differential,
    homology_dims,
    lift_chain_map,
    random_graded_map,
    sigma_map,
    solve_null_homotopy,
    tensor_complex,
    HomSystem,
)
from gerstenhaber.exactla import Matrix, Subspace, kernel
from gerstenhaber.hopf import (
    AxiomError,
    HopfAlgebra,
    ModuleRep,
    free_module,
    is_module_hom,
    regular_module,
    taft,
    tensor_hopf,
    trivial_module,
)
from gerstenhaber.scalars import FieldError, omega_binomial


class CertificationError(ArithmeticError):
    """An exact certificate that theory guarantees did not hold (an implementation bug)."""


@dataclass
class Splitting:
    """``section: P -> free`` and ``projection: free -> P`` with ``projection @ section == id``."""

    section: Matrix
    projection: Matrix
    free: ModuleRep
    source: str = "generic"

    def composes_to_identity(self) -> bool:
        P = self.projection @ self.section
        return P == Matrix.identity(P.field, P.rows)


@dataclass
class Resolution:
    """A verified resolution of the unit module."""

    complex: TruncatedComplex
    hopf: HopfAlgebra
    splittings: list[Splitting] = field(default_factory=list)
    formula_splittings: list[Splitting] = field(default_factory=list)
    kind: dict = field(default_factory=dict)

    @property
    def N(self):
        return self.complex.N

    @property
    def P(self):
        return self.complex


# ---------------------------------------------------------------------------
# the periodic resolution over a Taft algebra
# ---------------------------------------------------------------------------


def taft_parameters(H: HopfAlgebra):
    if H.kind.get("type") != "taft":
        raise ValueError(f"{H.name} is not a Taft algebra")
    n = H.kind["n"]
    F = H.field
    w = F.parse_raw(H.kind["root"])
    return n, w


def _taft_module(H, parity, name):
    n, w = taft_parameters(H)
    F = H.field

    def build(k):
        a, b = divmod(k, n)  # basis element x^a g^b
        M = Matrix.zeros(F, n, n)
        for i in range(n - a):
            M.data[i + a][i] = F.pow(w, b * (i + parity))
        return M

    return ModuleRep(H.algebra, n, build, name=name)


def taft_resolution(H: HopfAlgebra | int, N: int, spec=None, verify: bool = True) -> Resolution:
    """``... -> B --x^{n-1}--> B --x--> B --eps--> k`` with ``g . x^i = w^(i + l mod 2) x^i`` in degree l.

    ``H`` is a Taft algebra, or ``n`` together with a field ``spec``.
    """
    if isinstance(H, int):
        if spec is None:
            raise ValueError("taft_resolution(n, N, spec) needs a field")
        H = taft(H, spec)
    n, w = taft_parameters(H)
    F = H.field
    even = _taft_module(H, 0, "P_even")
    odd = _taft_module(H, 1, "P_odd")
    modules = [even if l % 2 == 0 else odd for l in range(N + 1)]
    mult_x = Matrix(F, n, n, [{i - 1: F.one} if i >= 1 else {} for i in range(n)])
    mult_top = Matrix(F, n, n, [{0: F.one} if i == n - 1 else {} for i in range(n)])
    diffs = [None] + [mult_x if l % 2 else mult_top for l in range(1, N + 1)]
    aug = Matrix(F, 1, n, [{0: F.one}])
    P = TruncatedComplex(modules, diffs, trivial_module(H), aug, name=f"P(T{n})")
    R = Resolution(P, H, kind={"type": "taft", "n": n})
    R.formula_splittings = [taft_formula_splitting(H, l % 2) for l in range(N + 1)]
    R.splittings = [taft_splitting(H, l % 2) for l in range(N + 1)]
    if verify:
        verify_resolution(R)
    return R


def taft_formula_splitting(H: HopfAlgebra, parity: int) -> Splitting:
    """The two maps ``P_l -> A -> P_l`` for the Taft resolution, in closed form.

    Even: ``x^i -> (1/n) sum_j x^i g^j`` and ``x^i g^j -> x^i``.
    Odd: ``x^i -> (1/n) sum_j x^(i+1) g^j`` (``i < n-1``), ``(1/n) sum_j g^j`` (``i = n-1``)
    and ``x^i g^j -> x^(i-1)`` (``i != 0``), ``x^(n-1)`` (``i = 0``).
    These compose to the identity, but the odd pair is not A-linear: ``x`` kills
    ``x^(n-1)`` while it does not kill ``(1/n) sum_j g^j``.  See :func:`taft_splitting`.
    """
    n, _ = taft_parameters(H)
    F = H.field
    inv_n = F.inv(F.from_int(n))
    s_cols, p_cols = [], []
    for i in range(n):
        if parity == 0:
            s_cols.append({i * n + j: inv_n for j in range(n)})
        elif i < n - 1:
            s_cols.append({(i + 1) * n + j: inv_n for j in range(n)})
        else:
            s_cols.append({j: inv_n for j in range(n)})
    for i in range(n):
        for j in range(n):
            if parity == 0:
                p_cols.append({i: F.one})
            else:
                p_cols.append({i - 1 if i else n - 1: F.one})
    s = Matrix.from_columns(F, s_cols, n * n)
    p = Matrix.from_columns(F, p_cols, n)
    return Splitting(s, p, regular_module(H.algebra), source="formula")


def taft_splitting(H: HopfAlgebra, parity: int) -> Splitting:
    """A-linear splitting of ``P_l`` through ``A`` via the idempotent ``e = (1/n) sum_j w^(-parity j) g^j``.

    ``x^i -> x^i e`` and ``x^i g^j -> w^(parity j) x^i``; for even degrees this
    is exactly the pair written out in :func:`taft_formula_splitting`.
    """
    n, w = taft_parameters(H)
    F = H.field
    inv_n = F.inv(F.from_int(n))
    w_inv = F.inv(w)
    s_cols = [{i * n + j: F.mul(inv_n, F.pow(w_inv, parity * j)) for j in range(n)} for i in range(n)]
    p_cols = [{i: F.pow(w, parity * j)} for i in range(n) for j in range(n)]
    s = Matrix.from_columns(F, s_cols, n * n)
    p = Matrix.from_columns(F, p_cols, n)
    return Splitting(s, p, regular_module(H.algebra), source="idempotent")


def verify_resolution(R: Resolution, exact_upto: int | None = None):
    """Exactness and module-linearity of the complex, plus every stored splitting."""
    P = R.complex
    P.check(linearity=True)
    rep = homology_dims(P, exact_upto)
    if not rep.is_resolution:
        raise CertificationError(f"{P.name} is not exact: homology {rep.dims}")
    for l, sp in enumerate(R.splittings):
        if not sp.composes_to_identity():
            raise CertificationError(f"splitting of P_{l} does not compose to the identity")
        if not is_module_hom(sp.section, P.modules[l], sp.free) or not is_module_hom(sp.projection, sp.free, P.modules[l]):
            raise CertificationError(f"splitting of P_{l} is not module-linear")
    for l, sp in enumerate(R.formula_splittings):
        if not sp.composes_to_identity():
            raise CertificationError(f"formula splitting of P_{l} does not compose to the identity")
    return rep


def group_zp_resolution(H: HopfAlgebra, N: int, verify: bool = True) -> Resolution:
    """``P_l = k[u]/(u^p)`` with differentials alternating ``u`` and ``u^(p-1)``."""
    if H.kind.get("type") != "group_zp":
        raise ValueError(f"{H.name} is not a group algebra k[Z/p]")
    p = H.kind["p"]
    F = H.field
    A = H.algebra
    reg = regular_module(A)
    mult_u = A.left_matrix(1)
    mult_top = A.left_matrix(p - 1)
    diffs = [None] + [mult_u if l % 2 else mult_top for l in range(1, N + 1)]
    aug = Matrix(F, 1, p, [{0: F.one}])
    P = TruncatedComplex([reg] * (N + 1), diffs, trivial_module(H), aug, name=f"P(Z{p})")
    ident = Matrix.identity(F, p)
    R = Resolution(P, H, kind={"type": "group_zp", "p": p})
    R.splittings = [Splitting(ident, ident, reg, source="free")] * (N + 1)
    if verify:
        verify_resolution(R)
    return R


def free_resolution(H: HopfAlgebra, N: int, verify: bool = True) -> Resolution:
    """Free resolution of k: each ``P_{l+1} = A^r`` maps onto ``ker d_l`` (greedy generators).

    Works for any finite-dimensional Hopf algebra; ranks are not minimal in general.
    """
    F = H.field
    P = module_free_resolution(trivial_module(H), N, name=f"F({H.name})")
    R = Resolution(P, H, kind={"type": "free"})
    R.splittings = [Splitting(Matrix.identity(F, m.dim), Matrix.identity(F, m.dim), m, source="free")
                    for m in P.modules]
    if verify:
        verify_resolution(R)
    return R


def _generators(M: ModuleRep, vectors):
    """Greedy module generators among ``vectors`` until they span their A-closure."""
    A, F = M.algebra, M.field
    target = Subspace.span(F, M.dim, [M.action(a).apply(v) for v in vectors for a in range(A.dim)])
    gens = []
    span = Subspace.span(F, M.dim, [])
    for v in vectors:
        if span.contains(v):
            continue
        gens.append(v)
        span = Subspace.span(F, M.dim, span.basis + [M.action(a).apply(v) for a in range(A.dim)])
        if span.dim == target.dim:
            break
    return gens


def module_free_resolution(M: ModuleRep, N: int, name: str = "F") -> TruncatedComplex:
    """Free resolution ``A^{r_l}`` of an arbitrary module ``M``, augmented onto ``M``."""
    A, F = M.algebra, M.field
    gens = _generators(M, [{i: F.one} for i in range(M.dim)])
    aug = Matrix.from_columns(F, [M.action(a).apply(v) for v in gens for a in range(A.dim)], M.dim)
    modules = [free_module(A, len(gens))]
    diffs = [None]
    prev = aug
    for l in range(1, N + 1):
        K = kernel(prev)
        src = modules[-1]
        gens = _generators(src, K.basis)
        cols = [src.action(a).apply(v) for v in gens for a in range(A.dim)]
        d = Matrix.from_columns(F, cols, src.dim)
        modules.append(free_module(A, len(gens)))
        diffs.append(d)
        prev = d
    return TruncatedComplex(modules, diffs, M, aug, name=name)


def projective_splitting(M: ModuleRep) -> Splitting | None:
    """Generic splitting of ``A^r -> M`` (r = number of module generators), or None if M is not projective."""
    A, F = M.algebra, M.field
    gens = []
    span = Subspace.span(F, M.dim, [])
    for i in range(M.dim):
        e = {i: F.one}
        if span.contains(e):
            continue
        gens.append(i)
        vecs = [M.action(a).apply(e) for a in range(A.dim)]
        span = Subspace.span(F, M.dim, span.basis + vecs)
        if span.dim == M.dim:
            break
    r = len(gens)
    free = free_module(A, r)
    cols = []
    for g in gens:
        for a in range(A.dim):
            cols.append(M.action(a).apply({g: F.one}))
    proj = Matrix.from_columns(F, cols, M.dim)
    sys = HomSystem(F)
    u = sys.unknown(cached_hom(M, free))
    sys.equation([(u, proj, None, 1)], Matrix.identity(F, M.dim))
    sol = sys.solve()
    if sol is None:
        return None
    return Splitting(sol[0], proj, free, source="generic")


# ---------------------------------------------------------------------------
# diagonals
# ---------------------------------------------------------------------------


@dataclass
class DiagonalData:
    """A diagonal ``Delta: P -> P (x) P`` and a degree -1 map ``psi`` with
    ``del(psi) = (mu (x) 1 - 1 (x) mu) Delta``; ``top`` bounds every certificate."""

    P: TruncatedComplex
    PP: TruncatedComplex
    delta: GradedMap
    psi: GradedMap
    hopf: HopfAlgebra
    top: int
    kind: str = "generic"
    certificates: dict = field(default_factory=dict)

    @property
    def psi_is_zero(self) -> bool:
        return self.psi.is_zero()


def counit_defect(delta: GradedMap) -> GradedMap:
    """``(mu (x) 1 - 1 (x) mu) Delta`` as a degree-0 map ``P -> P``."""
    PP = delta.target
    P = PP.factors[0]
    mu = augmentation_map(P)
    left = delta.then(contract_left(mu, PP))
    right = delta.then(contract_right(mu, PP))
    return left - right


def certify_diagonal(D: DiagonalData, linearity: bool = True) -> dict:
    """Exact checks: chain map, lifting of ``k -> k (x) k``, linearity, the counit equation for ``psi``."""
    P, PP, delta = D.P, D.PP, D.delta
    cert = {}
    chain = hom_differential(delta)
    bad = chain.first_nonzero(D.top)
    cert["chain_map"] = bad is None
    if bad is not None:
        raise CertificationError(f"diagonal is not a chain map in degree {bad}")
    cert["augmentation"] = PP.aug @ delta[0] == P.aug
    if not cert["augmentation"]:
        raise CertificationError("diagonal does not lift k -> k (x) k")
    if linearity:
        for l in range(D.top + 1):
            if not is_module_hom(delta[l], P.modules[l], PP.modules[l]):
                raise CertificationError(f"diagonal component {l} is not module-linear")
        cert["linear"] = True
    defect = counit_defect(delta)
    resid = hom_differential(D.psi) - defect.restrict(D.psi.top)
    bad = resid.first_nonzero()
    cert["psi_equation"] = bad is None
    if bad is not None:
        raise CertificationError(f"psi equation fails in degree {bad}")
    cert["psi_zero"] = D.psi.is_zero()
    cert["top"] = D.top
    D.certificates.update(cert)
    return cert


def _tensor_square(R: Resolution, N: int | None = None):
    P = R.complex
    return tensor_complex(P, P, hopf=R.hopf, N=N)


def taft_diagonal(R: Resolution, verify: bool = True) -> DiagonalData:
    """Explicit diagonal on the Taft resolution:

    ``Delta(e_{2j+1}) = sum_i e_i (x) e_{2j+1-i}`` and
    ``Delta(e_{2j}) = sum_i e_{2i} (x) e_{2j-2i}
    + sum_{i<j} sum_a binom(n-1, a+1)_w x^a e_{2i+1} (x) x^{n-2-a} e_{2j-2i-1}``,
    extended A-linearly (``x`` acts on ``P (x) P`` through the coproduct).
    """
    n, w = taft_parameters(R.hopf)
    H, P = R.hopf, R.complex
    F = H.field
    PP = _tensor_square(R)
    x_index = 1 * n + 0
    comps = {}
    for l in range(PP.N + 1):
        gen = {}

        def put(i, a, b, coeff):
            blk = PP.block(l, i)
            k = blk.offset + a * blk.dim_right + b
            gen[k] = F.add(gen.get(k, F.zero), coeff)

        if l % 2:
            for i in range(l + 1):
                put(i, 0, 0, F.one)
        else:
            j = l // 2
            for i in range(j + 1):
                put(2 * i, 0, 0, F.one)
            for i in range(j):
                for a in range(n - 1):
                    c = omega_binomial(n - 1, a + 1, F, w).raw
                    put(2 * i + 1, a, n - 2 - a, c)
        gen = {k: v for k, v in gen.items() if not F.is_zero(v)}
        X = PP.modules[l].action(x_index)
        cols = []
        v = gen
        for i in range(n):
            cols.append(v)
            v = X.apply(v)
        comps[l] = Matrix.from_columns(F, cols, PP.dim(l))
    delta = GradedMap(P, PP, 0, comps, PP.N, "Delta")
    psi = GradedMap(P, P, -1, {}, P.N - 1, "psi")
    D = DiagonalData(P, PP, delta, psi, H, top=min(PP.N, P.N - 1), kind="explicit")
    if verify:
        certify_diagonal(D)
    return D


def generic_diagonal(R: Resolution, top: int | None = None, verify: bool = True,
                     seed: int | None = None) -> DiagonalData:
    """Diagonal by lifting ``k -> k (x) k`` degree by degree, and ``psi`` by a null-homotopy solve.

    With ``seed``, a random boundary ``del(K)`` is added to the lift so that the
    result is (almost surely) far from any hand-written diagonal.
    """
    P = R.complex
    PP = _tensor_square(R)
    F = P.field
    top = PP.N if top is None else min(top, PP.N)
    rep = homology_dims(PP, top - 1) if top >= 1 else None
    if rep is not None and not rep.is_resolution:
        raise CertificationError(f"P (x) P is not exact below degree {top}: {rep.dims}")
    delta = lift_chain_map(P, PP, Matrix.identity(F, 1), top)
    if seed is not None:
        K = random_graded_map(P, PP, -1, top, random.Random(seed))
        delta = delta + hom_differential(K)
    delta.name = "Delta"
    defect = counit_defect(delta)
    psi = solve_null_homotopy(defect, min(top, P.N - 1))
    if psi is None:
        raise CertificationError("no psi solves the counit equation")
    psi.name = "psi"
    D = DiagonalData(P, PP, delta, psi, R.hopf, top=min(top, P.N - 1), kind="generic")
    if verify:
        certify_diagonal(D)
    return D


def sigma_is_linear(D: DiagonalData) -> bool:
    sig = sigma_map(D.PP)
    return all(is_module_hom(sig[m], D.PP.modules[m], D.PP.modules[m]) for m in range(min(D.top, D.PP.N) + 1))


def symmetrize_diagonal(D: DiagonalData, verify: bool = True) -> DiagonalData:
    """``(Delta + sigma Delta) / 2``; needs a cocommutative Hopf algebra and characteristic != 2."""
    H = D.hopf
    F = H.field
    if F.characteristic == 2:
        raise FieldError("symmetrization divides by 2: characteristic 2 is not allowed")
    if not H.is_cocommutative:
        raise AxiomError(f"{H.name} is not cocommutative; sigma(Delta) is not module-linear")
    sig = sigma_map(D.PP)
    sd = D.delta.then(sig)
    half = F.inv(F.from_int(2))
    sym = (D.delta + sd).scale(half)
    sym.name = "Delta_sym"
    if not (sym.then(sig) - sym).is_zero(D.top):
        raise CertificationError("symmetrized diagonal is not sigma-invariant")
    psi = GradedMap(D.P, D.P, -1, {}, D.psi.top, "psi")
    out = DiagonalData(D.P, D.PP, sym, psi, H, D.top, kind="symmetrized")
    if verify:
        certify_diagonal(out)
        if not out.psi_is_zero:
            raise CertificationError("symmetric diagonal should admit psi = 0")
    out.certificates["sigma_invariant"] = True
    return out


# ---------------------------------------------------------------------------
# tensor products
# ---------------------------------------------------------------------------


def tensor_resolution(R1: Resolution, R2: Resolution, H: HopfAlgebra | None = None,
                      N: int | None = None, verify: bool = True) -> Resolution:
    """``P1 (x) P2`` over ``A1 (x) A2`` with Koszul differential and factorwise splittings."""
    if R1.hopf.field != R2.hopf.field:
        raise FieldError("resolutions over different fields")
    H = H or tensor_hopf(R1.hopf, R2.hopf)
    P = tensor_complex(R1.complex, R2.complex, outer=H.algebra, N=N, name=f"{R1.complex.name}#{R2.complex.name}")
    R = Resolution(P, H, kind={"type": "tensor", "factors": [R1.kind, R2.kind]})
    R.factors = (R1, R2)
    for m in range(P.N + 1):
        secs, projs = [], []
        for b in P.blocks[m]:
            s1, s2 = R1.splittings[b.i], R2.splittings[b.j]
            if s1.free.dim != R1.hopf.dim or s2.free.dim != R2.hopf.dim:
                raise ComplexError("tensor splittings need rank-one free factors")
            secs.append(s1.section.kron(s2.section))
            projs.append(s1.projection.kron(s2.projection))
        section = Matrix.diagonal_blocks(secs)
        projection = Matrix.diagonal_blocks(projs)
        r = len(P.blocks[m])
        R.splittings.append(Splitting(section, projection, free_module(H.algebra, r), source="tensor"))
    if verify:
        verify_resolution(R)
    return R


def tensor_diagonal(R: Resolution, D1: DiagonalData, D2: DiagonalData, verify: bool = True) -> DiagonalData:
    """``(1 (x) sigma_23 (x) 1)(Delta1 (x) Delta2)`` with the Koszul sign of the middle interchange."""
    P = R.complex
    H = R.hopf
    F = H.field
    PP = _tensor_square(R)
    PP1, PP2 = D1.PP, D2.PP
    top = min(PP.N, D1.top + 1, D2.top + 1, PP1.N, PP2.N)
    comps = {}
    decode1 = _decoder(PP1)
    decode2 = _decoder(PP2)
    for m in range(top + 1):
        M = Matrix.zeros(F, PP.dim(m), P.dim(m))
        for b in P.blocks[m]:
            d1 = D1.delta[b.i]
            d2 = D2.delta[b.j]
            c1 = d1.columns()
            c2 = d2.columns()
            for p in range(b.dim_left):
                for q in range(b.dim_right):
                    col = b.offset + p * b.dim_right + q
                    for k1, v1 in c1[p].items():
                        a, a2, u, u2 = decode1[b.i][k1]
                        for k2, v2 in c2[q].items():
                            bb, b2, v, v_2 = decode2[b.j][k2]
                            coeff = F.mul(v1, v2)
                            if (a2 * bb) % 2:
                                coeff = F.neg(coeff)
                            left_deg, right_deg = a + bb, a2 + b2
                            lb = P.block(left_deg, a)
                            rb = P.block(right_deg, a2)
                            x = lb.offset + u * lb.dim_right + v
                            y = rb.offset + u2 * rb.dim_right + v_2
                            tb = PP.block(m, left_deg)
                            row = tb.offset + x * tb.dim_right + y
                            M.add_to(row, col, coeff)
        comps[m] = M
    delta = GradedMap(P, PP, 0, comps, top, "Delta")
    psi = GradedMap(P, P, -1, {}, min(top, P.N - 1), "psi")
    D = DiagonalData(P, PP, delta, psi, H, top=min(top, P.N - 1), kind="tensor")
    defect = counit_defect(delta)
    if not defect.is_zero(D.top):
        sol = solve_null_homotopy(defect, D.top)
        if sol is None:
            raise CertificationError("no psi for the tensor diagonal")
        D.psi = sol
    if verify:
        certify_diagonal(D, linearity=False)
    return D


def _decoder(PP: TruncatedComplex):
    """Per degree: flat index -> (i, j, index in P_i, index in P_j)."""
    out = []
    for m in range(PP.N + 1):
        table = {}
        for b in PP.blocks[m]:
            for u in range(b.dim_left):
                for v in range(b.dim_right):
                    table[b.offset + u * b.dim_right + v] = (b.i, b.j, u, v)
        out.append(table)
    return out


def tensor_resolution_and_diagonal(R1: Resolution, D1: DiagonalData, R2: Resolution, D2: DiagonalData,
                                   H: HopfAlgebra | None = None, N: int | None = None, verify: bool = True):
    R = tensor_resolution(R1, R2, H, N=N, verify=verify)
    return R, tensor_diagonal(R, D1, D2, verify=verify)


# ---------------------------------------------------------------------------
# power flatness
# ---------------------------------------------------------------------------


@dataclass
class PowerFlatReport:
    r: int
    maxdeg: int
    homology: list[int]
    augmentation_ok: bool
    projective: bool
    first_failure: int | None

    @property
    def flat(self) -> bool:
        return self.first_failure is None and self.augmentation_ok and self.projective


def power_flat_check(R: Resolution, r: int, maxdeg: int, check_projective: bool = True) -> PowerFlatReport:
    """Homology of ``P^{(x) r}`` in degrees ``1..maxdeg`` and projectivity of its summands."""
    if r < 2:
        raise ValueError("power flatness is about r >= 2")
    P = R.complex.truncate(maxdeg + 1)
    T = P
    for _ in range(r - 1):
        T = tensor_complex(T, P, hopf=R.hopf, N=maxdeg + 1)
    rep = homology_dims(T, maxdeg)
    projective = True
    if check_projective:
        seen = set()
        for m in range(min(maxdeg, T.N) + 1):
            for mod in T.summands[m]:
                key = (mod.dim, mod.name)
                if key in seen:
                    continue
                seen.add(key)
                sp = projective_splitting(mod)
                if sp is None or not sp.composes_to_identity():
                    projective = False
                    break
    return PowerFlatReport(r, maxdeg, rep.dims, bool(rep.augmentation_ok), projective, rep.first_failure)
