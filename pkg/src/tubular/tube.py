"""The translation quivers Γ(p,n,m), truncated at a depth, and the ray and
coray insertions that build them from stable tubes.

Vertices are ``TubeVertex(family, i, j)`` with family X, Y or Z.  Arrows
carry a kind: "ray" for F_i[j] -> F_i[j+1] (pointing to infinity) and
"coray" for every other arrow (pointing to the mouth).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

RAY = "ray"
CORAY = "coray"


class BadParams(ValueError):
    pass


class NotRayVertex(ValueError):
    pass


class NotCorayVertex(ValueError):
    pass


class TubeVertex(NamedTuple):
    family: str
    i: int
    j: int

    def __str__(self) -> str:
        return f"{self.family}{self.i}[{self.j}]"

    @classmethod
    def parse(cls, text: str) -> "TubeVertex":
        text = text.strip()
        fam = text[0]
        i, rest = text[1:].split("[")
        return cls(fam, int(i), int(rest.rstrip("]")))


def _sort_key(v):
    if isinstance(v, TubeVertex):
        return (0, "XYZ".index(v.family), v.i, v.j)
    return (1, repr(v))


@dataclass
class TubeQuiver:
    vertices: set
    arrows: dict  # (u, v) -> kind
    tau: dict
    projective: set
    injective: set
    depth: int
    params: tuple | None = None

    # -- basic queries
    def out_arrows(self, v, kind: str | None = None) -> list:
        return sorted((w for (u, w), k in self.arrows.items() if u == v and (kind is None or k == kind)),
                      key=_sort_key)

    def in_arrows(self, v, kind: str | None = None) -> list:
        return sorted((u for (u, w), k in self.arrows.items() if w == v and (kind is None or k == kind)),
                      key=_sort_key)

    def tau_inverse(self, v):
        for a, b in self.tau.items():
            if b == v:
                return a
        return None

    def copy(self) -> "TubeQuiver":
        return TubeQuiver(set(self.vertices), dict(self.arrows), dict(self.tau), set(self.projective),
                          set(self.injective), self.depth, self.params)

    def key(self) -> tuple:
        """Hashable summary used for exact equality."""
        return (frozenset(self.vertices), frozenset(self.arrows.items()), frozenset(self.tau.items()),
                frozenset(self.projective), frozenset(self.injective))

    def __eq__(self, other) -> bool:
        return isinstance(other, TubeQuiver) and self.key() == other.key()

    def to_json(self) -> dict:
        vs = sorted(self.vertices, key=_sort_key)
        return {
            "params": list(self.params) if self.params else None,
            "depth": self.depth,
            "vertices": [str(v) for v in vs],
            "arrows": [{"src": str(u), "tgt": str(w), "kind": k}
                       for (u, w), k in sorted(self.arrows.items(), key=lambda t: (_sort_key(t[0][0]), _sort_key(t[0][1])))],
            "tau": [{"vertex": str(v), "translate": str(self.tau[v])} for v in vs if v in self.tau],
            "projective": [str(v) for v in vs if v in self.projective],
            "injective": [str(v) for v in vs if v in self.injective],
        }


# ---------------------------------------------------------------------------
# construction


def gamma_arrows(p: int, n: int, m: int, j: int) -> list[tuple]:
    """All arrows of Γ(p,n,m) produced by the defining clauses for one value of j."""
    X = lambda i, jj: TubeVertex("X", i, jj)  # noqa: E731
    Y = lambda i, jj: TubeVertex("Y", i, jj)  # noqa: E731
    Z = lambda i, jj: TubeVertex("Z", i, jj)  # noqa: E731
    out = []
    for i in range(0, n - m + 1):
        out.append((X(i, j), X(i, j + 1), RAY))
    for i in range(1, n - m + 1):
        out.append((X(i - 1, j), X(i, j), CORAY))
    if m == 0 and p == 0:
        out.append((X(n, j + 1), X(0, j), CORAY))
    if m >= 1:
        out.append((X(n - m, j), Y(1, j), CORAY))
        for i in range(1, m + 1):
            out.append((Y(i, j), Y(i, j + 1), RAY))
        for i in range(1, m):
            out.append((Y(i, j + 1), Y(i + 1, j), CORAY))
        if p >= 1:
            out.append((Y(m, j + 2), Z(1, j), CORAY))
        else:
            out.append((Y(m, j + 2), X(0, j), CORAY))
    if p >= 1:
        out.append((Z(p, j + 1), X(0, j), CORAY))
        for i in range(1, p + 1):
            out.append((Z(i, j), Z(i, j + 1), RAY))
        for i in range(1, p):
            out.append((Z(i, j + 1), Z(i + 1, j), CORAY))
        if m == 0:
            out.append((X(n, j + 1), Z(1, j), CORAY))
    return out


def gamma_tau(p: int, n: int, m: int, v: TubeVertex):
    """Translate of v in Γ(p,n,m), or None when v is projective."""
    fam, i, j = v
    if fam == "X":
        if i >= 1:
            return TubeVertex("X", i - 1, j - 1) if j >= 2 else None
        if m == 0 and p == 0:
            return TubeVertex("X", n, j)
        if p >= 1:
            return TubeVertex("Z", p, j)
        return TubeVertex("Y", m, j + 1)
    if fam == "Y":
        if j == 1:
            return None
        if i == 1:
            return TubeVertex("X", n - m, j - 1)
        return TubeVertex("Y", i - 1, j)
    if i > 1:
        return TubeVertex("Z", i - 1, j)
    if m >= 1:
        return TubeVertex("Y", m, j + 1)
    return TubeVertex("X", n, j)


def build_gamma(p: int, n: int, m: int, depth: int) -> TubeQuiver:
    """Γ(p,n,m) restricted to vertices of quasi-length j <= depth."""
    if p < 0 or not 0 <= m <= n:
        raise BadParams("need p >= 0 and 0 <= m <= n")
    if depth < max(3, m + 2):
        raise BadParams("depth must be at least max(3, m + 2)")
    vs = set()
    for j in range(1, depth + 1):
        vs.update(TubeVertex("X", i, j) for i in range(n - m + 1))
        vs.update(TubeVertex("Y", i, j) for i in range(1, m + 1))
        vs.update(TubeVertex("Z", i, j) for i in range(1, p + 1))
    arrows = {}
    for j in range(1, depth + 1):
        for u, w, kind in gamma_arrows(p, n, m, j):
            if u in vs and w in vs:
                arrows[(u, w)] = kind
    tau = {}
    for v in vs:
        t = gamma_tau(p, n, m, v)
        if t is not None and t in vs:
            tau[v] = t
    proj = {TubeVertex("X", i, 1) for i in range(1, n - m + 1)} | {TubeVertex("Y", i, 1) for i in range(1, m + 1)}
    inj = {TubeVertex("Y", i, 1) for i in range(1, m + 1)}
    return TubeQuiver(vs, arrows, tau, proj, inj, depth, (p, n, m))


def truncate(T: TubeQuiver, depth: int) -> TubeQuiver:
    vs = {v for v in T.vertices if v.j <= depth}
    return TubeQuiver(vs, {k: c for k, c in T.arrows.items() if k[0] in vs and k[1] in vs},
                      {a: b for a, b in T.tau.items() if a in vs and b in vs},
                      T.projective & vs, T.injective & vs, depth, T.params)


# ---------------------------------------------------------------------------
# rays and corays


@dataclass
class Ray:
    vertices: list

    @property
    def start(self):
        return self.vertices[0]


@dataclass
class Coray:
    vertices: list  # ordered towards the mouth; the last one is the end vertex

    @property
    def end(self):
        return self.vertices[-1]


def maximal_rays(T: TubeQuiver) -> list[Ray]:
    starts = [v for v in T.vertices if not T.in_arrows(v, RAY)]
    rays = []
    for s in sorted(starts, key=_sort_key):
        chain = [s]
        while True:
            nxt = T.out_arrows(chain[-1], RAY)
            if not nxt:
                break
            chain.append(nxt[0])
        rays.append(Ray(chain))
    return rays


def maximal_corays(T: TubeQuiver) -> list[Coray]:
    ends = [v for v in T.vertices if not T.out_arrows(v, CORAY)]
    out = []
    for e in sorted(ends, key=_sort_key):
        chain = [e]
        while True:
            prv = T.in_arrows(chain[-1], CORAY)
            if not prv:
                break
            chain.append(prv[0])
        out.append(Coray(list(reversed(chain))))
    return out


def ray_of(T: TubeQuiver) -> dict:
    """vertex -> (ray index, position starting at 1)."""
    out = {}
    for r, ray in enumerate(maximal_rays(T)):
        for k, v in enumerate(ray.vertices, start=1):
            out[v] = (r, k)
    return out


# ---------------------------------------------------------------------------
# insertions


def _forward_ray(T: TubeQuiver, v) -> list:
    chain = [v]
    while True:
        nxt = T.out_arrows(chain[-1], RAY)
        if not nxt:
            return chain
        chain.append(nxt[0])


def _backward_coray(T: TubeQuiver, v) -> list:
    chain = [v]
    while True:
        prv = T.in_arrows(chain[-1], CORAY)
        if not prv:
            return chain
        chain.append(prv[0])


def is_ray_vertex(T: TubeQuiver, v) -> bool:
    """The ray from v contains every sectional path starting at v."""
    if v not in T.vertices or len(T.out_arrows(v)) != 1 or T.out_arrows(v, RAY) != T.out_arrows(v):
        return False
    u = _forward_ray(T, v)
    for k in range(1, len(u)):
        for w in T.out_arrows(u[k], CORAY):
            if T.tau.get(w) != u[k - 1]:
                return False
    return True


def is_coray_vertex(T: TubeQuiver, v) -> bool:
    if v not in T.vertices or len(T.in_arrows(v)) != 1 or T.in_arrows(v, CORAY) != T.in_arrows(v):
        return False
    c = _backward_coray(T, v)
    for k in range(1, len(c)):
        for w in T.in_arrows(c[k], RAY):
            if T.tau.get(c[k - 1]) != w:
                return False
    return True


def _raw_ray_insertion(T: TubeQuiver, v) -> TubeQuiver:
    if not is_ray_vertex(T, v):
        raise NotRayVertex(f"{v} is not a ray vertex")
    u = _forward_ray(T, v)
    new = [("new", k) for k in range(len(u))]
    R = T.copy()
    for k, uk in enumerate(u):
        for w in T.out_arrows(uk, CORAY):
            del R.arrows[(uk, w)]
            R.arrows[(new[k], w)] = CORAY
    for k, uk in enumerate(u):
        R.vertices.add(new[k])
        R.arrows[(uk, new[k])] = CORAY
        if k + 1 < len(u):
            R.arrows[(new[k], new[k + 1])] = RAY
    index = {uk: k for k, uk in enumerate(u)}
    for w, t in T.tau.items():
        if t in index:
            R.tau[w] = new[index[t]]
    for k in range(len(u) - 1):
        R.tau[new[k + 1]] = u[k]
    R.projective.add(new[0])
    for k, uk in enumerate(u):
        if uk in T.injective:
            R.injective.discard(uk)
            R.injective.add(new[k])
    R.params = None
    return R


def _raw_coray_insertion(T: TubeQuiver, v) -> TubeQuiver:
    if not is_coray_vertex(T, v):
        raise NotCorayVertex(f"{v} is not a coray vertex")
    c = _backward_coray(T, v)
    new = [("new", k) for k in range(len(c))]
    R = T.copy()
    for k, ck in enumerate(c):
        for w in T.in_arrows(ck, RAY):
            del R.arrows[(w, ck)]
            R.arrows[(w, new[k])] = RAY
    for k, ck in enumerate(c):
        R.vertices.add(new[k])
        R.arrows[(new[k], ck)] = RAY
        if k + 1 < len(c):
            R.arrows[(new[k + 1], new[k])] = CORAY
    for k, ck in enumerate(c):
        if ck in T.tau:
            R.tau[new[k]] = T.tau[ck]
        R.tau.pop(ck, None)
        if k + 1 < len(c):
            R.tau[ck] = new[k + 1]
    R.injective.add(new[0])
    for k, ck in enumerate(c):
        if ck in T.projective:
            R.projective.discard(ck)
            R.projective.add(new[k])
    R.params = None
    return R


def canonicalize(T: TubeQuiver) -> tuple[TubeQuiver, dict]:
    """Rename vertices to Γ(p,n,m) coordinates read off from the ray structure.

    The cyclic order of rays follows coray arrows; X_0 is the ray right before
    the block of rays whose first vertex is projective.
    """
    rays = maximal_rays(T)
    where = {}
    for r, ray in enumerate(rays):
        for v in ray.vertices:
            where[v] = r
    succ = {}
    for (u, w), kind in T.arrows.items():
        if kind == CORAY:
            a, b = where[u], where[w]
            if succ.setdefault(a, b) != b:
                raise ValueError("coray arrows from one ray reach two different rays")
    R = len(rays)
    if len(succ) != R or sorted(succ.values()) != list(range(R)):
        raise ValueError("rays do not form a single cycle")
    pred = {b: a for a, b in succ.items()}
    starts_proj = [ray.start in T.projective for ray in rays]
    if not any(starts_proj):
        raise ValueError("no projective ray start; the cyclic origin is ambiguous")
    first = next(r for r in range(R) if starts_proj[r] and not starts_proj[pred[r]])
    x0 = pred[first]
    order = [x0]
    while len(order) < R:
        order.append(succ[order[-1]])
    if order[0] != x0 or succ[order[-1]] != x0:
        raise ValueError("ray cycle is inconsistent")
    kinds = []
    for r in order[1:]:
        s = rays[r].start
        kinds.append("P" if s in T.projective and s not in T.injective else
                     "PI" if s in T.projective else "N")
    k = 0
    n_m = 0
    while k < len(kinds) and kinds[k] == "P":
        n_m += 1
        k += 1
    m = 0
    while k < len(kinds) and kinds[k] == "PI":
        m += 1
        k += 1
    p = 0
    while k < len(kinds) and kinds[k] == "N":
        p += 1
        k += 1
    if k != len(kinds):
        raise ValueError("ray starts are not in Γ(p,n,m) order")
    names = [("X", 0)] + [("X", i) for i in range(1, n_m + 1)] + [("Y", i) for i in range(1, m + 1)] + \
        [("Z", i) for i in range(1, p + 1)]
    rename = {}
    for (fam, i), r in zip(names, order):
        for pos, v in enumerate(rays[r].vertices, start=1):
            rename[v] = TubeVertex(fam, i, pos)
    out = TubeQuiver({rename[v] for v in T.vertices},
                     {(rename[u], rename[w]): kd for (u, w), kd in T.arrows.items()},
                     {rename[a]: rename[b] for a, b in T.tau.items()},
                     {rename[v] for v in T.projective}, {rename[v] for v in T.injective},
                     T.depth, (p, n_m + m, m))
    return out, rename


@dataclass
class InsertionResult:
    tube: TubeQuiver
    renaming: dict  # old vertex -> vertex of the result


def _finish(raw: TubeQuiver, old: TubeQuiver, depth: int | None) -> InsertionResult:
    canon, rename = canonicalize(raw)
    if depth is not None:
        canon = truncate(canon, depth)
        canon.depth = depth
    renaming = {v: rename[v] for v in old.vertices if rename[v] in canon.vertices}
    return InsertionResult(canon, renaming)


def ray_insertion(T: TubeQuiver, v, depth: int | None = None) -> InsertionResult:
    """One-fold ray insertion at the ray vertex v.

    Positions along rays are unchanged for old vertices; pass ``depth`` to
    truncate the canonical result.
    """
    return _finish(_raw_ray_insertion(T, v), T, depth)


def coray_insertion(T: TubeQuiver, v, depth: int | None = None) -> InsertionResult:
    """One-fold coray insertion at the coray vertex v.

    New vertices interleave with old ones on the rays they join, so the
    result is reliable only up to about half of T's depth; pass ``depth``.
    """
    return _finish(_raw_coray_insertion(T, v), T, depth)


def remove_vertices(T: TubeQuiver, drop: Iterable) -> TubeQuiver:
    drop = set(drop)
    vs = T.vertices - drop
    return TubeQuiver(vs, {k: c for k, c in T.arrows.items() if k[0] in vs and k[1] in vs},
                      {a: b for a, b in T.tau.items() if a in vs and b in vs},
                      T.projective - drop, T.injective - drop, T.depth, None)


# ---------------------------------------------------------------------------
# validation


@dataclass
class Report:
    ok: bool = True
    problems: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def fail(self, msg: str):
        self.ok = False
        self.problems.append(msg)


def _interior(T: TubeQuiver, v, margin: int = 2) -> bool:
    return getattr(v, "j", 0) <= T.depth - margin


def validate(T: TubeQuiver) -> Report:
    """Structural audit: τ off projectives, meshes, ray/coray shape, level cycles."""
    rep = Report()
    for v in sorted(T.vertices, key=_sort_key):
        if len(T.out_arrows(v, RAY)) > 1 or len(T.in_arrows(v, RAY)) > 1:
            rep.fail(f"{v}: more than one ray arrow in or out")
        if len(T.out_arrows(v, CORAY)) > 1 or len(T.in_arrows(v, CORAY)) > 1:
            rep.fail(f"{v}: more than one coray arrow in or out")
        if v in T.projective and v in T.tau:
            rep.fail(f"{v}: projective vertex has a translate")
        if not _interior(T, v):
            continue
        if v not in T.projective and v not in T.tau:
            rep.fail(f"{v}: non-projective interior vertex has no translate")
        if v in T.tau:
            t = T.tau[v]
            if sorted(T.in_arrows(v), key=_sort_key) != sorted(T.out_arrows(t), key=_sort_key):
                rep.fail(f"mesh at {v}: predecessors {list(map(str, T.in_arrows(v)))} "
                         f"!= successors of {t}: {list(map(str, T.out_arrows(t)))}")
    images = list(T.tau.values())
    if len(images) != len(set(images)):
        rep.fail("translation is not injective")
    for v in T.injective:
        if v in images:
            rep.fail(f"{v}: injective vertex is a translate")
    # every vertex on one ray and one coray
    seen = [v for ray in maximal_rays(T) for v in ray.vertices]
    if sorted(seen, key=_sort_key) != sorted(T.vertices, key=_sort_key):
        rep.fail("rays do not partition the vertices")
    seen = [v for c in maximal_corays(T) for v in c.vertices]
    if sorted(seen, key=_sort_key) != sorted(T.vertices, key=_sort_key):
        rep.fail("corays do not partition the vertices")
    _check_level_cycle(T, rep)
    return rep


def _check_level_cycle(T: TubeQuiver, rep: Report) -> None:
    """A τ-walk of one step per ray visits every ray once and comes back to the
    starting ray (a helix; it closes into a cycle of each level when no ray
    starts at a projective-only vertex)."""
    rays = maximal_rays(T)
    pos = ray_of(T)
    R = len(rays)
    walked = 0
    for r, ray in enumerate(rays):
        k = max(1, len(ray.vertices) // 2)
        v = ray.vertices[k - 1]
        visited = [r]
        for _ in range(R):
            if v not in T.tau:
                visited = None
                break
            v = T.tau[v]
            visited.append(pos[v][0])
        if visited is None:
            continue
        walked += 1
        if visited[-1] != r or sorted(visited[:-1]) != list(range(R)):
            rep.fail(f"τ-walk from ray {r} does not cycle through all {R} rays: {visited}")
    if walked == 0 and R:
        rep.notes.append("depth too small for the level-cycle check")


def mesh_additivity_check(T: TubeQuiver, dimvec: Mapping) -> Report:
    """dim τv + dim v = sum of the middle terms, on every complete mesh with known data."""
    rep = Report()
    for v in sorted(T.vertices, key=_sort_key):
        if v in T.projective or v not in T.tau:
            continue
        t = T.tau[v]
        preds = T.in_arrows(v)
        if not T.in_arrows(v, CORAY) or sorted(preds, key=_sort_key) != sorted(T.out_arrows(t), key=_sort_key):
            continue
        if v not in dimvec or t not in dimvec or any(u not in dimvec for u in preds):
            continue
        left = [a + b for a, b in zip(dimvec[t], dimvec[v])]
        right = [sum(col) for col in zip(*[dimvec[u] for u in preds])] if preds else [0] * len(left)
        rep.notes.append(str(v))
        if left != right:
            rep.fail(f"mesh at {v}: {left} != {right}")
    return rep


# ---------------------------------------------------------------------------
# DOT


def to_dot(T: TubeQuiver, name: str = "tube") -> str:
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [fontsize=10];"]
    for v in sorted(T.vertices, key=_sort_key):
        if v in T.projective and v in T.injective:
            shape = "doubleoctagon"
        elif v in T.projective:
            shape = "box"
        elif v in T.injective:
            shape = "diamond"
        else:
            shape = "ellipse"
        lines.append(f'  "{v}" [shape={shape}];')
    for (u, w), kind in sorted(T.arrows.items(), key=lambda t: (_sort_key(t[0][0]), _sort_key(t[0][1]))):
        lines.append(f'  "{u}" -> "{w}" [label="{kind}"];')
    for v in sorted(T.tau, key=_sort_key):
        lines.append(f'  "{v}" -> "{T.tau[v]}" [style=dashed, constraint=false, arrowhead=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"
