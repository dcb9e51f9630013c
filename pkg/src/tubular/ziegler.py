"""Symbolic model of the Ziegler closure of a tube Γ(p,n,m).

Points are the finite-dimensional vertices, one prüfer point per maximal
ray, one adic point per maximal coray, and one generic point.  A subset
stores finitely many vertices plus, per ray, an optional tail "all j >= k"
(so its trace on every ray is finite or cofinite).  Closure adds

* the prüfer point of a ray meeting the set infinitely often,
* the adic point of a coray meeting the set infinitely often,
* the generic point once the set has infinitely many vertices or any
  infinite-dimensional point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .tube import TubeVertex, build_gamma, maximal_corays

TUBULAR_TYPES = [(2, 2, 2, 2), (3, 3, 3), (2, 4, 4), (2, 3, 6)]


class NotClosed(ValueError):
    pass


class BadTubularType(ValueError):
    pass


class OpaqueTrace(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ZgPoint:
    """kind is "prufer" (ident = ray name), "adic" (ident = coray end) or "generic"."""

    kind: str
    ident: str = ""

    def __str__(self) -> str:
        return self.kind if self.kind == "generic" else f"{self.kind}:{self.ident}"

    @classmethod
    def parse(cls, text: str) -> "ZgPoint":
        if text == "generic":
            return GENERIC
        kind, ident = text.split(":", 1)
        if kind not in ("prufer", "adic"):
            raise ValueError(f"unknown point kind {kind!r}")
        return cls(kind, ident)


GENERIC = ZgPoint("generic")


def Prufer(ray: str) -> ZgPoint:
    return ZgPoint("prufer", ray)


def Adic(coray: str) -> ZgPoint:
    return ZgPoint("adic", coray)


def ray_name(v: TubeVertex) -> str:
    return f"{v.family}{v.i}"


@dataclass(frozen=True)
class SymbolicSubset:
    vertices: frozenset = frozenset()
    tails: tuple = ()  # sorted ((ray name, first position), ...)
    points: frozenset = frozenset()

    @classmethod
    def make(cls, vertices: Iterable = (), tails: Mapping | Iterable = (), points: Iterable = ()):
        tails = dict(tails)
        vs = frozenset(v for v in vertices if not (ray_name(v) in tails and v.j >= tails[ray_name(v)]))
        # fold vertices sitting just below a tail into it
        changed = True
        while changed:
            changed = False
            for r, k in list(tails.items()):
                below = next((v for v in vs if ray_name(v) == r and v.j == k - 1), None)
                if below is not None:
                    tails[r] = k - 1
                    vs = vs - {below}
                    changed = True
        return cls(vs, tuple(sorted(tails.items())), frozenset(points))

    @property
    def tail_map(self) -> dict:
        return dict(self.tails)

    def contains_vertex(self, v: TubeVertex) -> bool:
        k = self.tail_map.get(ray_name(v))
        return v in self.vertices or (k is not None and v.j >= k)

    def __contains__(self, x) -> bool:
        if isinstance(x, TubeVertex):
            return self.contains_vertex(x)
        return x in self.points

    def is_empty(self) -> bool:
        return not self.vertices and not self.tails and not self.points

    def is_infinite(self) -> bool:
        return bool(self.tails)

    def union(self, other: "SymbolicSubset") -> "SymbolicSubset":
        tails = self.tail_map
        for r, k in other.tails:
            tails[r] = min(k, tails.get(r, k))
        return SymbolicSubset.make(self.vertices | other.vertices, tails, self.points | other.points)

    __or__ = union

    def intersection(self, other: "SymbolicSubset") -> "SymbolicSubset":
        a, b = self.tail_map, other.tail_map
        tails = {r: max(a[r], b[r]) for r in a if r in b}
        vs = {v for v in self.vertices | other.vertices if self.contains_vertex(v) and other.contains_vertex(v)}
        return SymbolicSubset.make(vs, tails, self.points & other.points)

    __and__ = intersection

    def without_vertex(self, v: TubeVertex) -> "SymbolicSubset":
        tails = self.tail_map
        r = ray_name(v)
        vs = set(self.vertices) - {v}
        if r in tails and v.j >= tails[r]:
            vs.update(TubeVertex(v.family, v.i, j) for j in range(tails[r], v.j))
            tails[r] = v.j + 1
        return SymbolicSubset(frozenset(vs), tuple(sorted(tails.items())), self.points)

    def without_point(self, pt: ZgPoint) -> "SymbolicSubset":
        return SymbolicSubset(self.vertices, self.tails, self.points - {pt})

    def to_json(self) -> dict:
        return {
            "vertices": [[v.family, v.i, v.j] for v in sorted(self.vertices)],
            "ray_tails": [{"ray": r, "from": k} for r, k in self.tails],
            "points": [str(p) for p in sorted(self.points)],
        }

    @classmethod
    def from_json(cls, data: Mapping, space: "ZgSpace | None" = None) -> "SymbolicSubset":
        vs = [TubeVertex(f, int(i), int(j)) for f, i, j in data.get("vertices", [])]
        tails = {}
        for t in data.get("ray_tails", []):
            r = t["ray"]
            if isinstance(r, int) and space is not None:
                r = space.rays[r]
            tails[str(r)] = int(t.get("from", 1))
        pts = [ZgPoint.parse(s) for s in data.get("points", [])]
        if space is not None:
            for p in pts:
                if p.kind == "adic" and p.ident.isdigit():
                    raise ValueError("adic points are named by the end vertex of their coray")
        S = cls.make(vs, tails, pts)
        if space is not None:
            space.check_subset(S)
        return S


class ZgSpace:
    """Closure of the tube Γ(p,n,m) with its finite and infinite points."""

    def __init__(self, p: int, n: int, m: int):
        self.params = (p, n, m)
        self.rays = ([f"X{i}" for i in range(n - m + 1)] + [f"Y{i}" for i in range(1, m + 1)]
                     + [f"Z{i}" for i in range(1, p + 1)])
        ref = build_gamma(p, n, m, self._walk_depth)
        self.corays = [str(c.end) for c in maximal_corays(ref) if c.end.j <= 2]
        self._meets = self._coray_ray_incidence(ref)

    @property
    def _walk_depth(self) -> int:
        p, n, m = self.params
        return 6 * (p + n + 2) + 6

    def _coray_ray_incidence(self, ref) -> dict:
        """coray -> rays it meets infinitely often.

        Away from the mouth the arrow clauses do not depend on j, so the
        sequence of rays visited by a coray is periodic; the visits in the
        second half of a long walk are the ones that recur forever.
        """
        out = {}
        for c in maximal_corays(ref):
            name = str(c.end)
            if name not in self.corays:
                continue
            walk = [ray_name(v) for v in reversed(c.vertices)]
            out[name] = frozenset(walk[len(walk) // 2:])
        return out

    @cached_property
    def everything(self) -> SymbolicSubset:
        return SymbolicSubset.make((), {r: 1 for r in self.rays},
                                   [Prufer(r) for r in self.rays] + [Adic(c) for c in self.corays] + [GENERIC])

    @cached_property
    def tube(self) -> SymbolicSubset:
        return SymbolicSubset.make((), {r: 1 for r in self.rays})

    def infinite_points(self) -> list[ZgPoint]:
        return [Prufer(r) for r in self.rays] + [Adic(c) for c in self.corays] + [GENERIC]

    def check_subset(self, S: SymbolicSubset) -> None:
        p, n, m = self.params
        for v in S.vertices:
            ok = v.j >= 1 and ((v.family == "X" and 0 <= v.i <= n - m) or (v.family == "Y" and 1 <= v.i <= m)
                               or (v.family == "Z" and 1 <= v.i <= p))
            if not ok:
                raise ValueError(f"{v} is not a vertex of Γ{self.params}")
        for r, k in S.tails:
            if r not in self.rays or k < 1:
                raise ValueError(f"bad ray tail {r} from {k}")
        for pt in S.points:
            if (pt.kind == "prufer" and pt.ident not in self.rays) or (pt.kind == "adic" and pt.ident not in self.corays):
                raise ValueError(f"{pt} is not a point of this space")

    def coray_meets(self, coray: str) -> frozenset:
        return self._meets[coray]

    def closure(self, S: SymbolicSubset) -> SymbolicSubset:
        pts = set(S.points)
        tails = S.tail_map
        while True:
            new = set(pts)
            new.update(Prufer(r) for r in tails)
            new.update(Adic(c) for c in self.corays if self._meets[c] & tails.keys())
            if tails or new:
                new.add(GENERIC)
            if new == pts:
                break
            pts = new
        return SymbolicSubset(S.vertices, S.tails, frozenset(pts))

    def is_closed(self, S: SymbolicSubset) -> bool:
        return self.closure(S) == S

    def cb_derivative(self, S: SymbolicSubset) -> SymbolicSubset:
        """Drop the isolated points of the closed set S.

        A point is isolated when removing it leaves a closed set.  Every
        vertex of one ray tail behaves alike (the rules only see whether the
        ray stays cofinite), so each tail is decided by its first two
        vertices, which must agree.
        """
        if not self.is_closed(S):
            raise NotClosed("cb_derivative needs a closed set")
        out = S
        for v in S.vertices:
            if self.is_closed(S.without_vertex(v)):
                out = out.without_vertex(v)
        for r, k in S.tails:
            fam, i = r[0], int(r[1:])
            verdicts = {self.is_closed(S.without_vertex(TubeVertex(fam, i, j))) for j in (k, k + 1)}
            if len(verdicts) != 1:
                raise AssertionError("tail vertices disagree on isolation")
            if verdicts.pop():
                tails = dict(out.tails)
                del tails[r]
                out = SymbolicSubset(out.vertices, tuple(sorted(tails.items())), out.points)
        for pt in S.points:
            if self.is_closed(S.without_point(pt)):
                out = out.without_point(pt)
        return out

    def derived_sequence(self, S: SymbolicSubset | None = None) -> list[SymbolicSubset]:
        """S, S', S'', ... ending with the first empty set (or a fixed point)."""
        S = self.everything if S is None else S
        seq = [S]
        while not seq[-1].is_empty():
            nxt = self.cb_derivative(seq[-1])
            if nxt == seq[-1]:
                break
            seq.append(nxt)
        return seq

    def cb_rank(self, point, S: SymbolicSubset | None = None) -> int | float:
        seq = self.derived_sequence(S)
        if point not in seq[0]:
            raise ValueError(f"{point} is not in the set")
        if not seq[-1].is_empty() and point in seq[-1]:
            return math.inf
        return max(k for k, T in enumerate(seq) if point in T)

    def space_rank(self, S: SymbolicSubset | None = None) -> int | float:
        seq = self.derived_sequence(S)
        if not seq[-1].is_empty():
            return math.inf
        return len(seq) - 2


@dataclass
class PointCounts:
    prufer: int
    adic: int
    generic: int
    rays: list
    corays: list


def points(p: int, n: int, m: int) -> PointCounts:
    Z = ZgSpace(p, n, m)
    return PointCounts(len(Z.rays), len(Z.corays), 1, list(Z.rays), list(Z.corays))


# ---------------------------------------------------------------------------
# covers of larger spectra by closed pieces


@dataclass
class Piece:
    name: str
    kind: str  # "tube" or "opaque"
    space: ZgSpace | None = None
    params: tuple | None = None
    subpieces: list = field(default_factory=list)
    note: str = ""


@dataclass
class SpectrumCover:
    name: str
    pieces: list
    identifications: list = field(default_factory=list)  # (piece, piece, shared name)
    notes: list = field(default_factory=list)

    def piece(self, name: str) -> Piece:
        for pc in self.pieces:
            if pc.name == name:
                return pc
        raise KeyError(name)

    def names(self) -> list[str]:
        return [pc.name for pc in self.pieces]

    def is_closed(self, traces: Mapping) -> bool:
        """A subset is closed iff each of its traces is closed in its piece.

        Traces on tube pieces are SymbolicSubsets; on opaque pieces only the
        strings "empty" and "all" are understood.  Pieces with sub-pieces take
        a mapping of traces.
        """
        for name, trace in traces.items():
            pc = self.piece(name)
            if not _piece_closed(pc, trace):
                return False
        return True


def _piece_closed(pc: Piece, trace) -> bool:
    if pc.subpieces:
        if isinstance(trace, str) and trace in ("empty", "all"):
            return True
        sub = {s.name: s for s in pc.subpieces}
        return all(_piece_closed(sub[k], t) for k, t in trace.items())
    if pc.kind == "tube":
        if isinstance(trace, str):
            trace = SymbolicSubset() if trace == "empty" else pc.space.everything
        return pc.space.is_closed(trace)
    if trace in ("empty", "all"):
        return True
    raise OpaqueTrace(f"cannot decide closedness inside the opaque piece {pc.name}")


def _check_type(nbar) -> tuple:
    nbar = tuple(sorted(nbar))
    if nbar not in TUBULAR_TYPES:
        raise BadTubularType(f"{nbar} is not a tubular type")
    return nbar


def extension_rank(nbar) -> int:
    """Rank t of the tube holding the simple regular extension module.

    The canonical algebra of type n̄ is a one-point extension of a Euclidean
    algebra whose largest exceptional tube has rank max(n̄) − 1.
    """
    return max(_check_type(nbar)) - 1


def cover_Ei(family: str, nbar) -> SpectrumCover:
    nbar = _check_type(nbar)
    if family in ("E1", "E0"):
        t = extension_rank(nbar)
        params = (t - 1, 1, 1)
        tube = Piece(f"cl(T){params}", "tube", ZgSpace(*params), params)
        outer = ("D0", "D1") if family == "E1" else ("D0", "D2")
        pieces = [Piece(f"Zg({outer[0]})", "opaque"), tube, Piece(f"Zg({outer[1]})", "opaque")]
        ids = [(pieces[0].name, tube.name, "generic"), (tube.name, pieces[2].name, "generic")]
        return SpectrumCover(family, pieces, ids)
    if family == "E2":
        pieces = [Piece("Zg(D1)", "opaque")]
        ids = []
        for k, ni in enumerate(nbar, start=1):
            params = (0, ni - 1, ni - 1)
            pc = Piece(f"cl(T{k}){params}", "tube", ZgSpace(*params), params)
            pieces.append(pc)
            ids.append(("Zg(D1)", pc.name, f"Zg(C{k})"))
        pieces.append(Piece("Zg(D2)", "opaque"))
        ids.extend((pc.name, "Zg(D2)", "generic") for pc in pieces[1:-1])
        return SpectrumCover("E2", pieces, ids)
    raise ValueError(f"unknown family {family!r}")


def cover_galois(nbar, s: int) -> SpectrumCover:
    """Cover of the spectrum of the orbit algebra of the repetitive category
    under the s-th power of the Nakayama shift: 3s D-pieces and 3s E-pieces."""
    nbar = _check_type(nbar)
    if s < 1:
        raise ValueError("s must be at least 1")
    pieces = []
    ids = []
    for k in range(3 * s):
        pieces.append(Piece(f"Zg(D{k})", "opaque"))
    for k in range(3 * s):
        sub = cover_Ei(f"E{k % 3}", nbar)
        pieces.append(Piece(f"Zg(E{k})", "opaque", subpieces=sub.pieces,
                            note=f"pushed down from E{k % 3}"))
        ids.append((f"Zg(D{k})", f"Zg(E{k})", f"Zg(C{k})"))
        ids.append((f"Zg(E{k})", f"Zg(D{(k + 1) % (3 * s)})", f"Zg(C{k})'"))
    notes = ["every infinite-dimensional point is the push-down of a point of some D-piece"]
    name = "T" if s == 1 else f"Rhat/nu^{s}"
    return SpectrumCover(name, pieces, ids, notes)


def cover_trivial_extension(nbar) -> SpectrumCover:
    return cover_galois(nbar, 1)
