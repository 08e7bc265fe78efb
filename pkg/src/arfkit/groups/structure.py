"""Centralizers, type classification and mod-squares abelianizations."""
from __future__ import annotations

import itertools

from .. import fp
from .core import (GroupError, SemidirectZnC2, PullbackCyclicGroup,
                   PullbackDihedralGroup, cyclic_group, dihedral_group,
                   metacyclic_group, abelian_group, direct_product,
                   quotient_group, symmetric_group, alternating_group_4)
from .classes import conj_witness


# ---------------------------------------------------------------------------
# subgroups

class FiniteSubgroup:
    """Subgroup of any descriptor given by its explicit member set."""

    kind = "finite"

    def __init__(self, G, members):
        self.G = G
        self.members = tuple(sorted(set(members), key=G.key))

    def generators(self):
        return list(self.members)

    def __contains__(self, g):
        return g in self.members

    def __len__(self):
        return len(self.members)


class LatticeSubgroup:
    """The flip-free part Z^n of a SemidirectZnC2 group."""

    kind = "lattice"

    def __init__(self, G):
        self.G = G

    def generators(self):
        return [g for name, g in self.G.generators().items() if name != "S"]

    def __contains__(self, g):
        return g[1] == 0


class FullGroup:
    kind = "full"

    def __init__(self, G):
        self.G = G

    def generators(self):
        return list(self.G.generators().values())

    def __contains__(self, g):
        return True


class PullbackSubgroup:
    """Sub-pull-back {(d, e) in G : e in e_members} (all valid d allowed)."""

    kind = "pullback"

    def __init__(self, G, e_members):
        self.G = G
        self.e_members = tuple(sorted(set(e_members)))
        eset = set(self.e_members)
        for a in self.e_members:
            for b in self.e_members:
                if G.E.mul(a, b) not in eset:
                    raise GroupError("e-part is not a subgroup")

    def generators(self):
        gens = []
        if isinstance(self.G, PullbackCyclicGroup):
            gens.append((self.G.m, self.G.E.identity))
            for e in self.e_members:
                gens.append((self.G.hom[e], e))
        else:
            gens.append(((0, self.G.m), self.G.E.identity))
            for e in self.e_members:
                gens.append((self.G.hom[e], e))
        return gens

    def __contains__(self, g):
        return self.G.check_membership(g) and g[1] in self.e_members


def subgroup_closure(G, gens):
    """Member set generated by `gens` inside a finite group."""
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                for y in (G.mul(x, g), G.mul(x, G.inv(g))):
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# centralizers and types

def centralizer(G, z):
    """G_z = {g : gz = zg}."""
    if G.is_finite:
        return FiniteSubgroup(G, [g for g in G.elements() if G.mul(g, z) == G.mul(z, g)])
    if isinstance(G, SemidirectZnC2):
        v, s = z
        if z == G.identity:
            return FullGroup(G)
        if s == 0:
            return LatticeSubgroup(G)
        # centralizer of a flip (v,1) is {1, z}
        return FiniteSubgroup(G, [G.identity, z])
    if isinstance(G, PullbackCyclicGroup):
        e_members = [e for e in G.E.elements() if G.E.mul(e, z[1]) == G.E.mul(z[1], e)]
        return PullbackSubgroup(G, e_members)
    if isinstance(G, PullbackDihedralGroup):
        return _dihedral_stabilizer(G, z, allow_inverse=False)
    raise GroupError(f"unsupported family {G.family}")


def extended_centralizer(G, z):
    """Gbar_z = {g : g^-1 z g in {z, z^-1}}."""
    if G.is_finite:
        zi = G.inv(z)
        return FiniteSubgroup(G, [g for g in G.elements()
                                  if G.conj(z, g) in (z, zi)])
    if isinstance(G, SemidirectZnC2):
        v, s = z
        if s == 1 or z == G.identity:
            # involutions and the identity have z = z^-1, so Gbar_z = G_z
            return centralizer(G, z)
        return FullGroup(G)
    if isinstance(G, PullbackCyclicGroup):
        zi = G.inv(z)
        e_members = [e for e in G.E.elements()
                     if G.E.conj(z[1], e) in (z[1], zi[1])]
        # first coordinate is central, so conjugating to z^-1 needs i = -i
        if z[0] != 0:
            e_members = [e for e in G.E.elements()
                         if G.E.conj(z[1], e) == z[1]]
        return PullbackSubgroup(G, e_members)
    if isinstance(G, PullbackDihedralGroup):
        return _dihedral_stabilizer(G, z, allow_inverse=True)
    raise GroupError(f"unsupported family {G.family}")


def _dihedral_stabilizer(G, z, allow_inverse):
    E = G.E
    (eps, i), ez = z
    zinv = G.inv(z)
    if eps == 0:
        # conjugation by (d, e) sends z to (T^(+-i), e ez e^-1), the sign
        # being the S-degree of d (forced by hom(e)); membership is a
        # condition on e alone.
        e_members = []
        for e in E.elements():
            sdeg = G.hom[e][0]
            target = (((0, -i) if sdeg else (0, i)), E.conj(ez, e))
            if target == z or (allow_inverse and target == zinv):
                e_members.append(e)
        return PullbackSubgroup(G, e_members)
    # S-type z: the D-side stabilizer of S T^i is {1, S T^i}, so the
    # (extended) centralizer is finite and we can list it.
    members = []
    for e in E.elements():
        sdeg, c = G.hom[e]
        if sdeg == 0:
            cands = [((0, 0), e)] if c % G.m == 0 else []
        else:
            cands = [((1, j), e) for j in (i,) if (j - c) % G.m == 0]
        for g in cands:
            t = G.conj(z, g)
            if t == z or (allow_inverse and t == zinv):
                members.append(g)
    return FiniteSubgroup(G, members)


def type_of(G, z):
    """1 if z = z^-1; 2 if z^-1 is conjugate to z but distinct; 3 otherwise."""
    zi = G.inv(z)
    if z == zi:
        return 1
    return 2 if conj_witness(G, z, zi) is not None else 3


# ---------------------------------------------------------------------------
# abelianization mod squares


class SharpSpace:
    """An F_2 space presenting K_# = K_ab/(K_ab)^2 with a coordinate map.

    `gens` are opaque labels; `coord(g)` maps a group element of K to its
    vector.  Quotients by extra subspaces are built downstream.
    """

    def __init__(self, dim, rows, coord, labels=None):
        self.dim = dim
        self.context = fp.QuotientContext(dim, 2, rows)
        self._coord = coord
        self.labels = labels

    def coord(self, g):
        return self._coord(g)

    def reduce(self, g):
        return self.context.reduce(self._coord(g))

    @property
    def quotient_dim(self):
        return self.context.quotient_dim


def sharp_of_members(G, members):
    """K_# for a finite subgroup given by its members."""
    members = tuple(sorted(set(members), key=G.key))
    index = {g: i for i, g in enumerate(members)}
    n = len(members)
    rows = []
    for a in members:
        for b in members:
            r = [0] * n
            r[index[a]] += 1
            r[index[b]] += 1
            r[index[G.mul(a, b)]] += 1
            rows.append(r)

    def coord(g):
        if g not in index:
            raise GroupError("element outside subgroup")
        return fp.unit(n, index[g])

    return SharpSpace(n, rows, coord, labels=[G.format_element(g) for g in members])


def sharp_of_pullback(sub):
    """K_# for a sub-pull-back, via the presentation
    <t, u_e | u_e u_f = u_{ef} t^k(e,f), u_e t u_e^-1 = t^(+-1), u_1 = 1>."""
    G = sub.G
    E = G.E
    members = sub.e_members
    index = {e: i for i, e in enumerate(members)}
    n = len(members) + 1      # coordinate n-1 is t = (T^m, 1)
    tcol = n - 1
    rows = []

    def lift_exp(e):
        h = G.hom[e]
        return h if isinstance(h, int) else h[1]

    def carry(e, f):
        ef = E.mul(e, f)
        if isinstance(G, PullbackCyclicGroup):
            total = G.hom[e] + G.hom[f]
            return (total - G.hom[ef]) // G.m
        (e1, i1), (e2, i2) = G.hom[e], G.hom[f]
        tot = (-i1 if e2 else i1) + i2
        return (tot - G.hom[ef][1]) // G.m

    for e in members:
        for f in members:
            r = [0] * n
            r[index[e]] += 1
            r[index[f]] += 1
            r[index[E.mul(e, f)]] += 1
            r[tcol] += carry(e, f)
            rows.append(r)
    rid = [0] * n
    rid[index[E.identity]] = 1
    rows.append(rid)

    def coord(g):
        if g not in sub:
            raise GroupError("element outside subgroup")
        e = g[1]
        i = g[0] if isinstance(G, PullbackCyclicGroup) else g[0][1]
        j = (i - lift_exp(e)) // G.m
        v = [0] * n
        v[index[e]] = 1
        v[tcol] = j % 2
        return tuple(v)

    labels = [f"u[{E.format_element(e)}]" for e in members] + ["t"]
    return SharpSpace(n, rows, coord, labels=labels)


def sharp_of_semidirect(G):
    """G_# for Z^n x| C2: F_2^(n+1) with coordinates (v mod 2, s)."""
    n = G.rank

    def coord(g):
        v, s = g
        return tuple(x % 2 for x in v) + (s % 2,)

    return SharpSpace(n + 1, [], coord, labels=G.var_names + ["S"])


def sharp_of_lattice(G):
    n = G.rank

    def coord(g):
        v, s = g
        if s:
            raise GroupError("element outside the lattice")
        return tuple(x % 2 for x in v)

    return SharpSpace(n, [], coord, labels=list(G.var_names))


def sharp_of_subgroup(sub):
    if sub.kind == "finite":
        return sharp_of_members(sub.G, sub.members)
    if sub.kind == "pullback":
        return sharp_of_pullback(sub)
    if sub.kind == "lattice":
        return sharp_of_lattice(sub.G)
    if sub.kind == "full":
        G = sub.G
        if isinstance(G, SemidirectZnC2):
            return sharp_of_semidirect(G)
        if G.is_finite:
            return sharp_of_members(G, G.elements())
        return sharp_of_pullback(PullbackSubgroup(G, G.E.elements()))
    raise GroupError(f"unknown subgroup kind {sub.kind}")


def ab_mod_squares(G, members=None):
    """Basis data of J_# = J_ab/(J_ab)^2 plus a coordinate map.

    For finite groups `members` may restrict to a subgroup; pull-back
    families use their finite presentation.
    """
    if members is not None:
        return sharp_of_members(G, members)
    if G.is_finite:
        return sharp_of_members(G, G.elements())
    if isinstance(G, SemidirectZnC2):
        return sharp_of_semidirect(G)
    if isinstance(G, (PullbackCyclicGroup, PullbackDihedralGroup)):
        return sharp_of_pullback(PullbackSubgroup(G, G.E.elements()))
    raise GroupError(f"unsupported family {G.family}")


def hom_to_c2_count(G):
    """Brute-force count of homomorphisms G -> C2 (independent oracle
    for dim J_#)."""
    els = G.elements()
    gens = _generating_set(G)
    count = 0
    for bits in itertools.product((0, 1), repeat=len(gens)):
        # extend by BFS; fail on inconsistency
        val = {G.identity: 0}
        ok = True
        frontier = [G.identity]
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, b in zip(gens, bits):
                    y = G.mul(x, g)
                    w = (val[x] + b) % 2
                    if y in val:
                        if val[y] != w:
                            ok = False
                            break
                    else:
                        val[y] = w
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok and len(val) == len(els):
            count += 1
    return count


def _generating_set(G):
    els = [g for g in G.elements() if g != G.identity]
    gens = []
    span = {G.identity}
    for g in els:
        if g not in span:
            gens.append(g)
            span = subgroup_closure(G, gens)
            if len(span) == G.order():
                break
    return gens


def conjugacy_classes(G):
    """Ordinary conjugacy classes of a finite group."""
    els = G.elements()
    seen = set()
    classes = []
    for g in els:
        if g in seen:
            continue
        orb = {G.conj(g, x) for x in els}
        seen |= orb
        classes.append(frozenset(orb))
    classes.sort(key=lambda c: G.key(min(c, key=G.key)))
    return classes


# ---------------------------------------------------------------------------
# the fixed table list of all groups of order <= 16

def groups_of_order(n):
    make = {
        1: lambda: [cyclic_group(1)],
        2: lambda: [cyclic_group(2)],
        3: lambda: [cyclic_group(3)],
        4: lambda: [cyclic_group(4), abelian_group([2, 2])],
        5: lambda: [cyclic_group(5)],
        6: lambda: [cyclic_group(6), symmetric_group(3)],
        7: lambda: [cyclic_group(7)],
        8: lambda: [cyclic_group(8), abelian_group([4, 2]), abelian_group([2, 2, 2]),
                    dihedral_group(4), metacyclic_group(4, 2, 3, 2, name="Q8")],
        9: lambda: [cyclic_group(9), abelian_group([3, 3])],
        10: lambda: [cyclic_group(10), dihedral_group(5)],
        11: lambda: [cyclic_group(11)],
        12: lambda: [cyclic_group(12), abelian_group([6, 2]), dihedral_group(6),
                     alternating_group_4(), metacyclic_group(6, 2, 5, 3, name="Q12")],
        13: lambda: [cyclic_group(13)],
        14: lambda: [cyclic_group(14), dihedral_group(7)],
        15: lambda: [cyclic_group(15)],
        16: _groups_16,
    }
    if n not in make:
        raise GroupError("catalog covers orders 1..16")
    return make[n]()


def _groups_16():
    out = [
        cyclic_group(16),
        abelian_group([8, 2]),
        abelian_group([4, 4]),
        abelian_group([4, 2, 2]),
        abelian_group([2, 2, 2, 2]),
        dihedral_group(8),                                   # D16
        metacyclic_group(8, 2, 7, 4, name="Q16"),
        metacyclic_group(8, 2, 3, 0, name="SD16"),
        metacyclic_group(8, 2, 5, 0, name="M16"),
        metacyclic_group(4, 4, 3, 0, name="C4:C4"),
        direct_product(dihedral_group(4), cyclic_group(2), name="D4xC2"),
        direct_product(metacyclic_group(4, 2, 3, 2, name="Q8"), cyclic_group(2),
                       name="Q8xC2"),
        _group_16_semi(),
        _group_16_pauli(),
    ]
    return out


def _group_16_semi():
    """(C4 x C2) x| C2 with the flip a -> ab, b -> b (order 16)."""
    def phi(w):
        return ((w[0]) % 4, (w[1] + w[0]) % 2)

    els = [((x, y), e) for e in (0, 1) for x in range(4) for y in range(2)]

    def mul(g, h):
        (v, e), (w, f) = g, h
        w2 = phi(w) if e else w
        return (((v[0] + w2[0]) % 4, (v[1] + w2[1]) % 2), e ^ f)

    from .core import table_from_mul
    labels = [f"a{v[0]}b{v[1]}c{e}" for (v, e) in els]
    return table_from_mul(els, mul, labels=labels, name="(C4xC2):C2")


def _group_16_pauli():
    """The central product D4 o C4 (the 1-qubit Pauli group mod phases)."""
    D4 = dihedral_group(4)
    C4 = cyclic_group(4)
    P = direct_product(D4, C4, name="D4xC4")
    # central order-2 element (r^2, g^2)
    r2 = D4.parse_element("r^2")
    t2 = C4.parse_element("g^2")
    z = P._label_index[f"{D4.format_element(r2)}.{C4.format_element(t2)}"]
    return quotient_group(P, [P.identity, z], name="D4oC4")


def groups_upto(n):
    out = []
    for k in range(1, n + 1):
        out.extend(groups_of_order(k))
    return out
