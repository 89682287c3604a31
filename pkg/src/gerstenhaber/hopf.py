"""Finite-dimensional Hopf algebras and their modules, by structure constants.

Elements are sparse dicts ``basis index -> raw scalar``.  Tensor products
``V (x) W`` always use the lexicographic basis ``i * dim(W) + j``.
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Callable, Sequence

from gerstenhaber.exactla import Matrix, Subspace, kernel, vec_add
from gerstenhaber.scalars import FieldError, FieldSpec


class AxiomError(ArithmeticError):
    """A structure failed one of its exact axiom checks."""


class Algebra:
    """Associative unital algebra with basis ``0..dim-1``.

    ``products[(a, b)]`` is the sparse vector ``e_a * e_b`` (missing means zero).
    ``generators`` is a list of basis indices generating the algebra; hom-space
    computations only need to commute with these.
    """

    def __init__(self, field: FieldSpec, dim: int, labels: Sequence[str], products: dict,
                 unit: dict, generators: Sequence[int] | None = None, name: str = "A"):
        if len(labels) != dim:
            raise ValueError("label count does not match dimension")
        self.field = field
        self.dim = dim
        self.labels = list(labels)
        self.products = products
        self.unit = unit
        self.generators = list(generators) if generators is not None else list(range(dim))
        self.name = name
        self._left: dict[int, Matrix] = {}
        self._right: dict[int, Matrix] = {}

    def __repr__(self):
        return f"Algebra({self.name}, dim={self.dim}, {self.field!r})"

    def basis_product(self, a: int, b: int) -> dict:
        return self.products.get((a, b), {})

    def mul(self, u: dict, v: dict) -> dict:
        F = self.field
        out: dict = {}
        for a, x in u.items():
            for b, y in v.items():
                c = F.mul(x, y)
                for k, z in self.basis_product(a, b).items():
                    out = vec_add(F, out, {k: z}, c)
        return out

    def left_matrix(self, a: int) -> Matrix:
        """Matrix of left multiplication by ``e_a``."""
        if a not in self._left:
            cols = [self.basis_product(a, b) for b in range(self.dim)]
            self._left[a] = Matrix.from_columns(self.field, cols, self.dim)
        return self._left[a]

    def right_matrix(self, a: int) -> Matrix:
        """Matrix of right multiplication by ``e_a``."""
        if a not in self._right:
            cols = [self.basis_product(b, a) for b in range(self.dim)]
            self._right[a] = Matrix.from_columns(self.field, cols, self.dim)
        return self._right[a]

    def element(self, v: dict) -> str:
        if not v:
            return "0"
        return " + ".join(f"({self.field.format(c)})*{self.labels[k]}" for k, c in sorted(v.items()))

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def check_associative(self):
        rng = range(self.dim)
        for a in rng:
            for b in rng:
                ab = self.basis_product(a, b)
                for c in rng:
                    lhs = self.mul(ab, {c: self.field.one})
                    rhs = self.mul({a: self.field.one}, self.basis_product(b, c))
                    if lhs != rhs:
                        raise AxiomError(f"associativity fails on ({self.labels[a]}, {self.labels[b]}, {self.labels[c]})")

    def check_unit(self):
        one = self.field.one
        for a in range(self.dim):
            e = {a: one}
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise AxiomError(f"unit axiom fails on {self.labels[a]}")

    def opposite(self) -> "Algebra":
        products = {(b, a): v for (a, b), v in self.products.items()}
        return Algebra(self.field, self.dim, self.labels, products, self.unit, self.generators, self.name + "^op")


def tensor_algebra(A: Algebra, B: Algebra, name: str | None = None) -> Algebra:
    """``A (x) B`` with ``(a(x)b)(c(x)d) = ac (x) bd``."""
    if A.field != B.field:
        raise FieldError("tensor of algebras over different fields")
    F = A.field
    db = B.dim
    products = {}
    for (a, c), ac in A.products.items():
        for (b, d), bd in B.products.items():
            v = {}
            for i, x in ac.items():
                for j, y in bd.items():
                    v[i * db + j] = F.mul(x, y)
            products[(a * db + b, c * db + d)] = v
    unit = {i * db + j: F.mul(x, y) for i, x in A.unit.items() for j, y in B.unit.items()}
    labels = [f"{la}|{lb}" for la in A.labels for lb in B.labels]
    ua = min(A.unit)  # unit is a basis element in every algebra we build
    ub = min(B.unit)
    gens = [g * db + ub for g in A.generators] + [ua * db + g for g in B.generators]
    return Algebra(F, A.dim * db, labels, products, unit, gens, name or f"({A.name})(x)({B.name})")


def tensor_vectors(F, u: dict, v: dict, dim_v: int) -> dict:
    mul = F.mul
    return {i * dim_v + j: mul(x, y) for i, x in u.items() for j, y in v.items()}


class HopfAlgebra:
    """Hopf algebra with coproduct, counit, antipode (and its inverse)."""

    def __init__(self, algebra: Algebra, coproduct: list[dict], counit: list, antipode: Matrix,
                 antipode_inverse: Matrix | None = None, name: str | None = None, kind: dict | None = None):
        self.algebra = algebra
        self.coproduct = coproduct
        self.counit = counit
        self.antipode = antipode
        if antipode_inverse is None:
            from gerstenhaber.exactla import solve_matrix
            antipode_inverse = solve_matrix(antipode, Matrix.identity(algebra.field, algebra.dim))
            if antipode_inverse is None:
                raise AxiomError("antipode is not bijective")
        self.antipode_inverse = antipode_inverse
        self.name = name or algebra.name
        self.kind = kind or {"type": "custom"}

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self):
        return self.algebra.dim

    def __repr__(self):
        return f"HopfAlgebra({self.name}, dim={self.dim}, {self.field!r})"

    # linear extensions
    def delta(self, v: dict) -> dict:
        F = self.field
        out: dict = {}
        for a, c in v.items():
            out = vec_add(F, out, self.coproduct[a], c)
        return out

    def eps(self, v: dict):
        F = self.field
        acc = F.zero
        for a, c in v.items():
            acc = F.add(acc, F.mul(c, self.counit[a]))
        return acc

    def S(self, v: dict) -> dict:
        return self.antipode.apply(v)

    def S_inv(self, v: dict) -> dict:
        return self.antipode_inverse.apply(v)

    def sweedler(self, a: int):
        """Iterate the coproduct of a basis element as ``(coeff, left, right)`` triples."""
        d = self.dim
        for k, c in self.coproduct[a].items():
            yield c, k // d, k % d

    @cached_property
    def is_cocommutative(self) -> bool:
        d = self.dim
        for a in range(d):
            cop = self.coproduct[a]
            flipped = {(k % d) * d + k // d: v for k, v in cop.items()}
            if flipped != cop:
                return False
        return True

    def check_axioms(self):
        """Exact check of every Hopf algebra axiom on basis elements."""
        A, F = self.algebra, self.field
        A.check_associative()
        A.check_unit()
        d = A.dim
        one = F.one
        AA = tensor_algebra(A, A)
        for a in range(d):
            cop = self.coproduct[a]
            # coassociativity
            left = {}
            right = {}
            for k, c in cop.items():
                i, j = divmod(k, d)
                left = vec_add(F, left, tensor_vectors(F, self.coproduct[i], {j: one}, d), c)
                right = vec_add(F, right, tensor_vectors(F, {i: one}, self.coproduct[j], d * d), c)
            if left != right:
                raise AxiomError(f"coassociativity fails on {A.labels[a]}")
            # counit
            l1, r1 = {}, {}
            for k, c in cop.items():
                i, j = divmod(k, d)
                l1 = vec_add(F, l1, {j: F.mul(c, self.counit[i])})
                r1 = vec_add(F, r1, {i: F.mul(c, self.counit[j])})
            e = {a: one}
            if l1 != e or r1 != e:
                raise AxiomError(f"counit axiom fails on {A.labels[a]}")
            # antipode
            expect = {k: F.mul(self.counit[a], v) for k, v in A.unit.items() if not F.is_zero(F.mul(self.counit[a], v))}
            s1, s2 = {}, {}
            for k, c in cop.items():
                i, j = divmod(k, d)
                s1 = vec_add(F, s1, A.mul(self.S({i: one}), {j: one}), c)
                s2 = vec_add(F, s2, A.mul({i: one}, self.S({j: one})), c)
            if s1 != expect or s2 != expect:
                raise AxiomError(f"antipode axiom fails on {A.labels[a]}")
        # coproduct and counit are algebra maps
        for a in range(d):
            for b in range(d):
                ab = A.basis_product(a, b)
                if self.delta(ab) != AA.mul(self.coproduct[a], self.coproduct[b]):
                    raise AxiomError(f"coproduct not multiplicative on ({A.labels[a]}, {A.labels[b]})")
                if self.eps(ab) != F.mul(self.counit[a], self.counit[b]):
                    raise AxiomError(f"counit not multiplicative on ({A.labels[a]}, {A.labels[b]})")
        if self.delta(A.unit) != tensor_vectors(F, A.unit, A.unit, d):
            raise AxiomError("coproduct does not preserve the unit")
        ident = Matrix.identity(F, d)
        if self.antipode @ self.antipode_inverse != ident or self.antipode_inverse @ self.antipode != ident:
            raise AxiomError("antipode inverse is wrong")
        return True

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        A, F = self.algebra, self.field
        fmt = F.format

        def vec(v):
            return {str(k): fmt(c) for k, c in sorted(v.items())}

        return {
            "spec": F.to_json(),
            "dim": A.dim,
            "labels": A.labels,
            "name": self.name,
            "generators": A.generators,
            "unit": vec(A.unit),
            "mult": [[a, b, vec(v)] for (a, b), v in sorted(A.products.items()) if v],
            "coproduct": [vec(v) for v in self.coproduct],
            "counit": [fmt(c) for c in self.counit],
            "antipode": [vec(self.antipode.column(j)) for j in range(A.dim)],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "HopfAlgebra":
        F = FieldSpec.from_json(doc["spec"])

        def vec(v):
            out = {}
            for k, c in v.items():
                r = F.parse_raw(c)
                if not F.is_zero(r):
                    out[int(k)] = r
            return out

        dim = doc["dim"]
        products = {(a, b): vec(v) for a, b, v in doc["mult"]}
        A = Algebra(F, dim, doc["labels"], products, vec(doc["unit"]), doc.get("generators"), doc.get("name", "A"))
        S = Matrix.from_columns(F, [vec(c) for c in doc["antipode"]], dim)
        return cls(A, [vec(v) for v in doc["coproduct"]], [F.parse_raw(c) for c in doc["counit"]], S,
                   name=doc.get("name"), kind={"type": "file"})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


# ---------------------------------------------------------------------------
# concrete Hopf algebras
# ---------------------------------------------------------------------------


def taft(n: int, spec: FieldSpec, root=None) -> HopfAlgebra:
    """Taft algebra T_n: ``g x = w x g``, ``x^n = 0``, ``g^n = 1``.

    Basis ``x^i g^j`` at index ``i*n + j``.  ``root`` (raw) defaults to the
    primitive n-th root of unity among the powers of the field's omega.
    """
    if n < 2:
        raise ValueError("Taft algebras need n >= 2")
    if spec.characteristic and spec.characteristic % n == 0:
        raise FieldError(f"characteristic {spec.characteristic} divides n={n}")
    F = spec
    w = F.root(n) if root is None else root
    if F.pow(w, n) != F.one or any(F.pow(w, k) == F.one for k in range(1, n)):
        raise FieldError(f"root is not a primitive {n}-th root of unity")
    idx = lambda i, j: i * n + j
    wp = [F.pow(w, k) for k in range(n)]
    products = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if i + k < n:
                        products[(idx(i, j), idx(k, l))] = {idx(i + k, (j + l) % n): wp[(j * k) % n]}
    labels = [_taft_label(i, j) for i in range(n) for j in range(n)]
    A = Algebra(F, n * n, labels, products, {0: F.one}, [idx(1, 0), idx(0, 1)], name=f"T{n}")
    AA = tensor_algebra(A, A)
    d = n * n
    one = F.one
    dx = {idx(1, 0) * d + idx(0, 0): one, idx(0, 1) * d + idx(1, 0): one}
    dg = {idx(0, 1) * d + idx(0, 1): one}
    coproduct = []
    for i in range(n):
        for j in range(n):
            v = {0: one}
            for _ in range(i):
                v = AA.mul(v, dx)
            for _ in range(j):
                v = AA.mul(v, dg)
            coproduct.append(v)
    counit = [one if i == 0 else F.zero for i in range(n) for j in range(n)]
    # S(x) = -g^{-1} x, S(g) = g^{-1}; S is an anti-homomorphism
    s_x = A.mul({idx(0, n - 1): F.neg(one)}, {idx(1, 0): one})
    s_g = {idx(0, n - 1): one}
    cols = []
    for i in range(n):
        for j in range(n):
            v = {0: one}
            for _ in range(j):
                v = A.mul(v, s_g)
            for _ in range(i):
                v = A.mul(v, s_x)
            cols.append(v)
    S = Matrix.from_columns(F, cols, d)
    return HopfAlgebra(A, coproduct, counit, S, name=f"T{n}", kind={"type": "taft", "n": n, "root": F.format(w)})


def _taft_label(i, j):
    xs = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
    gs = "" if j == 0 else ("g" if j == 1 else f"g^{j}")
    return (xs + gs) or "1"


def group_algebra_zp(p: int, spec: FieldSpec) -> HopfAlgebra:
    """k[Z/p] in characteristic p, presented as k[u]/(u^p) with u = t - 1.

    ``Delta(u) = u(x)1 + 1(x)u + u(x)u``; ``S(u) = (1+u)^(p-1) - 1``.
    """
    F = spec
    if F.characteristic != p:
        raise FieldError(f"group algebra k[Z/{p}] in this presentation needs characteristic {p}")
    one = F.one
    products = {(i, j): {i + j: one} for i in range(p) for j in range(p) if i + j < p}
    labels = ["1", "u"] + [f"u^{i}" for i in range(2, p)]
    A = Algebra(F, p, labels, products, {0: one}, [1], name=f"k[Z/{p}]")
    AA = tensor_algebra(A, A)
    du = {1 * p + 0: one, 0 * p + 1: one, 1 * p + 1: one}
    coproduct = []
    v = {0: one}
    for i in range(p):
        coproduct.append(v)
        v = AA.mul(v, du)
    t_inv = {0: one}
    t = {0: one, 1: one}
    for _ in range(p - 1):
        t_inv = A.mul(t_inv, t)
    s_u = vec_add(F, t_inv, {0: F.neg(one)})
    cols, v = [], {0: one}
    for i in range(p):
        cols.append(v)
        v = A.mul(v, s_u)
    S = Matrix.from_columns(F, cols, p)
    counit = [one] + [F.zero] * (p - 1)
    return HopfAlgebra(A, coproduct, counit, S, name=f"k[Z/{p}]", kind={"type": "group_zp", "p": p})


def tensor_hopf(H1: HopfAlgebra, H2: HopfAlgebra) -> HopfAlgebra:
    """Componentwise Hopf structure on ``A1 (x) A2`` (coproduct with middle interchange)."""
    if H1.field != H2.field:
        raise FieldError("tensor of Hopf algebras over different fields")
    F = H1.field
    A = tensor_algebra(H1.algebra, H2.algebra, name=f"{H1.name}(x){H2.name}")
    d1, d2 = H1.dim, H2.dim
    d = d1 * d2
    coproduct = []
    for a in range(d1):
        for b in range(d2):
            v = {}
            for c1, i1, j1 in H1.sweedler(a):
                for c2, i2, j2 in H2.sweedler(b):
                    v[(i1 * d2 + i2) * d + (j1 * d2 + j2)] = F.mul(c1, c2)
            coproduct.append(v)
    counit = [F.mul(x, y) for x in H1.counit for y in H2.counit]
    S = H1.antipode.kron(H2.antipode)
    Si = H1.antipode_inverse.kron(H2.antipode_inverse)
    factors = _factors(H1) + _factors(H2)
    return HopfAlgebra(A, coproduct, counit, S, Si, name=A.name, kind={"type": "tensor", "factors": factors})


def _factors(H):
    if H.kind.get("type") == "tensor":
        return list(H.kind["factors"])
    return [H.kind]


def enveloping(H: HopfAlgebra | Algebra) -> Algebra:
    """``A^e = A (x) A^op``: ``(a(x)b)(c(x)d) = ac (x) db``."""
    A = H.algebra if isinstance(H, HopfAlgebra) else H
    Ae = tensor_algebra(A, A.opposite(), name=f"{A.name}^e")
    return Ae


def delta_embed(H: HopfAlgebra) -> Matrix:
    """Matrix of ``a -> sum a_1 (x) S(a_2)`` from A into A^e (columns per basis element)."""
    F, d = H.field, H.dim
    cols = []
    for a in range(d):
        v = {}
        for c, i, j in H.sweedler(a):
            v = vec_add(F, v, tensor_vectors(F, {i: F.one}, H.S({j: F.one}), d), c)
        cols.append(v)
    return Matrix.from_columns(F, cols, d * d)


def left_adjoint(H: HopfAlgebra, a: dict, b: dict) -> dict:
    A, F = H.algebra, H.field
    out = {}
    for x, c in a.items():
        for coeff, i, j in H.sweedler(x):
            out = vec_add(F, out, A.mul(A.mul({i: F.one}, b), H.S({j: F.one})), F.mul(c, coeff))
    return out


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------


class ModuleRep:
    """Left module over ``algebra`` given by one action matrix per basis element.

    Action matrices are produced by ``builder(a)`` on first use and cached.
    """

    def __init__(self, algebra: Algebra, dim: int, builder: Callable[[int], Matrix], name: str = "M"):
        self.algebra = algebra
        self.dim = dim
        self._builder = builder
        self._cache: dict[int, Matrix] = {}
        self.name = name

    @classmethod
    def from_matrices(cls, algebra, matrices: Sequence[Matrix], name="M"):
        mats = list(matrices)
        dim = mats[0].rows if mats else 0
        return cls(algebra, dim, lambda a: mats[a], name)

    @classmethod
    def from_generators(cls, algebra: Algebra, gen_actions: dict[int, Matrix], dim: int, name="M"):
        """Module from generator actions; other basis elements are expanded by
        writing them as words in the generators (found by breadth-first search)."""
        F = algebra.field
        words = _basis_words(algebra)
        ident = Matrix.identity(F, dim)

        def build(a):
            word_list = words[a]
            M = Matrix.zeros(F, dim, dim)
            for coeff, word in word_list:
                W = ident
                for g in word:
                    W = W @ gen_actions[g]
                M = M + W.scale(coeff)
            return M

        return cls(algebra, dim, build, name)

    @property
    def field(self):
        return self.algebra.field

    def action(self, a: int) -> Matrix:
        m = self._cache.get(a)
        if m is None:
            m = self._builder(a)
            if m.shape != (self.dim, self.dim):
                raise AxiomError(f"action of basis element {a} has shape {m.shape}")
            self._cache[a] = m
        return m

    def act(self, element: dict) -> Matrix:
        F = self.field
        M = Matrix.zeros(F, self.dim, self.dim)
        for a, c in element.items():
            M = M + self.action(a).scale(c)
        return M

    def check(self):
        """Exact module axioms on all basis pairs plus the unit."""
        A, F = self.algebra, self.field
        if self.act(A.unit) != Matrix.identity(F, self.dim):
            raise AxiomError(f"unit does not act as identity on {self.name}")
        for a in range(A.dim):
            for b in range(A.dim):
                if self.action(a) @ self.action(b) != self.act(A.basis_product(a, b)):
                    raise AxiomError(f"{self.name}: action of {A.labels[a]}*{A.labels[b]} is not multiplicative")
        return True

    def __repr__(self):
        return f"ModuleRep({self.name}, dim={self.dim}, over {self.algebra.name})"


def _basis_words(algebra: Algebra) -> list[list]:
    """Express each basis element as a combination of words in the generators."""
    from collections import deque
    from gerstenhaber.exactla import insert_row, solve_matrix

    F = algebra.field
    one = F.one
    pivots: dict = {}
    span_vectors, span_words = [], []
    queue = deque([((), dict(algebra.unit))])
    while queue and len(span_vectors) < algebra.dim:
        word, vec = queue.popleft()
        if not insert_row(pivots, vec, F):
            continue
        span_vectors.append(vec)
        span_words.append(word)
        for g in algebra.generators:
            queue.append((word + (g,), algebra.mul(vec, {g: one})))
    M = Matrix.from_columns(F, span_vectors, algebra.dim)
    X = solve_matrix(M, Matrix.identity(F, algebra.dim)) if M.cols == algebra.dim else None
    if X is None:
        raise AxiomError("generators do not generate the algebra")
    out = []
    for a in range(algebra.dim):
        col = X.column(a)
        out.append([(c, span_words[k]) for k, c in col.items()])
    return out


def trivial_module(H: HopfAlgebra) -> ModuleRep:
    F = H.field
    mats = [Matrix(F, 1, 1, [{0: c} if not F.is_zero(c) else {}]) for c in H.counit]
    return ModuleRep.from_matrices(H.algebra, mats, name="k")


def regular_module(A: Algebra) -> ModuleRep:
    M = ModuleRep(A, A.dim, A.left_matrix, name=f"{A.name}_reg")
    M.free_rank = 1
    return M


def free_module(A: Algebra, rank: int) -> ModuleRep:
    M = ModuleRep(A, A.dim * rank, lambda a: Matrix.diagonal_blocks([A.left_matrix(a)] * rank) if rank else
                  Matrix.zeros(A.field, 0, 0), name=f"{A.name}^{rank}")
    M.free_rank = rank
    return M


def adjoint_module(H: HopfAlgebra) -> ModuleRep:
    """A under ``a . b = sum a_1 b S(a_2)``."""
    F, d = H.field, H.dim

    def build(a):
        cols = [left_adjoint(H, {a: F.one}, {b: F.one}) for b in range(d)]
        return Matrix.from_columns(F, cols, d)

    return ModuleRep(H.algebra, d, build, name="A^ad")


def bimodule_regular(H: HopfAlgebra, Ae: Algebra | None = None) -> ModuleRep:
    """A as a left A^e-module: ``(a (x) b) . c = a c b``."""
    A = H.algebra
    Ae = Ae or enveloping(H)
    d = A.dim

    def build(k):
        a, b = divmod(k, d)
        return A.left_matrix(a) @ A.right_matrix(b)

    return ModuleRep(Ae, d, build, name="A_bimod")


def module_tensor(M: ModuleRep, N: ModuleRep, H: HopfAlgebra, name: str | None = None) -> ModuleRep:
    """``M (x) N`` with ``a . (m (x) n) = sum a_1 m (x) a_2 n``."""
    if M.algebra is not H.algebra or N.algebra is not H.algebra:
        raise ValueError("module_tensor: modules must be over the Hopf algebra's algebra")
    F = H.field

    def build(a):
        out = Matrix.zeros(F, M.dim * N.dim, M.dim * N.dim)
        for c, i, j in H.sweedler(a):
            out = out + M.action(i).kron(N.action(j)).scale(c)
        return out

    return ModuleRep(H.algebra, M.dim * N.dim, build, name=name or f"{M.name}(x){N.name}")


def outer_tensor(M: ModuleRep, N: ModuleRep, AB: Algebra, name: str | None = None) -> ModuleRep:
    """``M (x) N`` over ``A (x) B`` acting factorwise."""
    db = N.algebra.dim

    def build(k):
        a, b = divmod(k, db)
        return M.action(a).kron(N.action(b))

    return ModuleRep(AB, M.dim * N.dim, build, name=name or f"{M.name}#{N.name}")


def restrict_module(M: ModuleRep, B: Algebra, embedding: Matrix) -> ModuleRep:
    """Restriction along an algebra map ``B -> M.algebra`` (columns = images of basis)."""
    cols = embedding.columns()
    return ModuleRep(B, M.dim, lambda b: M.act(cols[b]), name=f"res({M.name})")


# ---------------------------------------------------------------------------
# hom spaces
# ---------------------------------------------------------------------------


class HomSpace:
    """``Hom_A(M, N)`` with a basis of matrices (N.dim x M.dim)."""

    def __init__(self, M: ModuleRep, N: ModuleRep, subspace: Subspace):
        self.source = M
        self.target = N
        self.subspace = subspace

    @property
    def dim(self):
        return self.subspace.dim

    @cached_property
    def basis(self) -> list[Matrix]:
        return [self.to_matrix(v) for v in self.subspace.basis]

    def to_matrix(self, vec: dict) -> Matrix:
        m = self.source.dim
        M = Matrix.zeros(self.source.field, self.target.dim, m)
        for k, v in vec.items():
            i, j = divmod(k, m)
            M.data[i][j] = v
        return M

    @staticmethod
    def flatten(T: Matrix) -> dict:
        m = T.cols
        return {i * m + j: v for i, r in enumerate(T.data) for j, v in r.items()}

    def combination(self, coeffs: dict) -> Matrix:
        F = self.source.field
        basis = self.subspace.basis
        vec = {}
        for k, c in coeffs.items():
            vec = vec_add(F, vec, basis[k], c)
        return self.to_matrix(vec)

    def contains(self, T: Matrix) -> bool:
        return self.subspace.contains(self.flatten(T))


def hom_space(M: ModuleRep, N: ModuleRep) -> HomSpace:
    """All ``T`` with ``T rho_M(a) = rho_N(a) T``, as one kernel computation.

    It is enough to impose the condition for a generating set of the algebra.
    """
    if M.algebra is not N.algebra:
        raise ValueError("hom_space: modules over different algebras")
    A, F = M.algebra, M.field
    m, n = M.dim, N.dim
    rank = getattr(M, "free_rank", None)
    if rank is not None and A.unit == {0: F.one}:
        # Hom(A^r, N) = N^r: the image of each free generator is arbitrary
        acts = [N.action(a).columns() for a in range(A.dim)]
        vecs = []
        for t in range(rank):
            for v in range(n):
                vec = {}
                for a in range(A.dim):
                    for i, c in acts[a][v].items():
                        vec[i * m + t * A.dim + a] = c
                vecs.append(vec)
        return HomSpace(M, N, Subspace.span(F, m * n, vecs))
    neg = F.neg
    rows = []
    for g in A.generators:
        RM = M.action(g)
        RN = N.action(g)
        colsM = RM.columns()
        for i in range(n):
            rn = RN.data[i]
            for j in range(m):
                eq: dict = {}
                for k, v in colsM[j].items():
                    eq[i * m + k] = v
                for k, v in rn.items():
                    key = k * m + j
                    if key in eq:
                        s = F.sub(eq[key], v)
                        if F.is_zero(s):
                            del eq[key]
                        else:
                            eq[key] = s
                    else:
                        eq[key] = neg(v)
                if eq:
                    rows.append(eq)
    system = Matrix(F, len(rows), m * n, rows)
    return HomSpace(M, N, kernel(system))


def is_module_hom(T: Matrix, M: ModuleRep, N: ModuleRep, all_basis: bool = False) -> bool:
    A = M.algebra
    elems = range(A.dim) if all_basis else A.generators
    return all(T @ M.action(a) == N.action(a) @ T for a in elems)


def scalar_matrix(F, rows, cols, entries: dict) -> Matrix:
    """Matrix from ``{(i, j): raw}``."""
    M = Matrix.zeros(F, rows, cols)
    for (i, j), v in entries.items():
        M.set(i, j, v)
    return M
