"""Writes the nonabelian groups of order 16 as GroupFiles.

Each group is built from its own elementary description, then checked:
order 16, nonabelian, a valid group table, and pairwise non-isomorphic.
"""

import itertools
import json
import random
from pathlib import Path

OUT = Path(__file__).parent / "order16"


def perm_closure(gens):
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[i]] for i in range(n))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def table_from_elements(elems, mul, identity):
    order = [identity] + [e for e in elems if e != identity]
    index = {e: i for i, e in enumerate(order)}
    return [[index[mul(a, b)] for b in order] for a in order]


def table_of_perms(gens):
    elems = perm_closure(gens)
    n = len(gens[0])
    return table_from_elements(elems, lambda a, b: tuple(b[a[i]] for i in range(n)), tuple(range(n)))


def check_group(t):
    n = len(t)
    assert all(sorted(row) == list(range(n)) for row in t)
    assert all(t[0][x] == x and t[x][0] == x for x in range(n))
    for a, b, c in itertools.product(range(n), repeat=3):
        assert t[t[a][b]][c] == t[a][t[b][c]]


def nonabelian(t):
    n = len(t)
    return any(t[a][b] != t[b][a] for a in range(n) for b in range(n))


def generators(t):
    n = len(t)

    def closure(gs):
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for g in gs:
                y = t[x][g]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    gens = []
    while len(closure(gens)) < n:
        gens.append(min(x for x in range(n) if x not in closure(gens)))
    return gens


def isomorphic(t, u):
    n = len(t)
    if n != len(u):
        return False
    gens = generators(t)
    for images in itertools.product(range(n), repeat=len(gens)):
        f = {0: 0}
        stack = [0]
        ok = True
        while stack and ok:
            x = stack.pop()
            for g, y in zip(gens, images):
                z, w = t[x][g], u[f[x]][y]
                if z not in f:
                    f[z] = w
                    stack.append(z)
                elif f[z] != w:
                    ok = False
                    break
        if ok and len(set(f.values())) == n and all(
            f[t[a][b]] == u[f[a]][f[b]] for a in range(n) for b in range(n)
        ):
            return True
    return False


def cayley(name, t, shuffle_seed=None):
    if shuffle_seed is not None:
        rng = random.Random(shuffle_seed)
        n = len(t)
        relabel = list(range(n))
        rng.shuffle(relabel)
        moved = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                moved[relabel[a]][relabel[b]] = relabel[t[a][b]]
        t = moved
    return {"name": name, "kind": "cayley", "order": len(t), "table": t}


def perm(name, gens):
    return {"name": name, "kind": "permutation", "degree": len(gens[0]), "generators": [list(g) for g in gens]}


def semidirect(m, n, k):
    """C_m : C_n with the generator of C_n acting by x -> x^k."""
    elems = [(i, j) for j in range(n) for i in range(m)]
    return table_from_elements(elems, lambda a, b: ((a[0] + pow(k, a[1], m) * b[0]) % m, (a[1] + b[1]) % n), (0, 0))


def quaternion16():
    # a^8 = 1, b^2 = a^4, b a b^-1 = a^-1; elements a^i b^j.
    def mul(x, y):
        i1, j1 = x
        i2, j2 = y
        i2 = -i2 if j1 else i2
        i = i1 + i2
        j = j1 + j2
        if j == 2:
            i += 4
            j = 0
        return (i % 8, j)

    return table_from_elements([(i, j) for j in range(2) for i in range(8)], mul, (0, 0))


def quaternion8_times_c2():
    # Quaternion units as (sign, axis) with axis in 1, i, j, k.
    table = {("1", "1"): (1, "1"), ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
             ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
             ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")}
    for a in "1ijk":
        table[("1", a)] = (1, a)
        table[(a, "1")] = (1, a)

    def mul(x, y):
        (s1, a1, c1), (s2, a2, c2) = x, y
        s, a = table[(a1, a2)]
        return (s1 * s2 * s, a, (c1 + c2) % 2)

    elems = [(s, a, c) for c in range(2) for s in (1, -1) for a in "1ijk"]
    return table_from_elements(elems, mul, (1, "1", 0))


def c4c2_by_c2():
    # (C4 x C2) : C2 where the involution sends a -> ab and fixes b.
    def phi(v, c):
        a, b = v
        return (a, (b + a * c) % 2)

    def mul(x, y):
        (a1, b1, c1), (a2, b2, c2) = x, y
        a2, b2 = phi((a2, b2), c1)
        return ((a1 + a2) % 4, (b1 + b2) % 2, (c1 + c2) % 2)

    elems = [(a, b, c) for c in range(2) for b in range(2) for a in range(4)]
    return table_from_elements(elems, mul, (0, 0, 0))


def pauli():
    # 2x2 matrices over the Gaussian integers, entries as (re, im) pairs.
    def cmul(x, y):
        return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def cadd(x, y):
        return (x[0] + y[0], x[1] + y[1])

    def mmul(p, q):
        return tuple(
            tuple(cadd(cmul(p[r][0], q[0][c]), cmul(p[r][1], q[1][c])) for c in range(2)) for r in range(2)
        )

    o, l, i = (0, 0), (1, 0), (0, 1)
    ident = ((l, o), (o, l))
    x = ((o, l), (l, o))
    z = ((l, o), (o, (-1, 0)))
    scalar_i = ((i, o), (o, i))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in (x, z, scalar_i):
                y = mmul(m, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return table_from_elements(sorted(seen), mmul, ident)


def main():
    r8 = [(i + 1) % 8 for i in range(8)]
    groups = [
        ("D16", perm("D16", [r8, [(-i) % 8 for i in range(8)]])),
        ("SD16", perm("SD16", [r8, [(3 * i) % 8 for i in range(8)]])),
        ("M16", perm("M16", [r8, [(5 * i) % 8 for i in range(8)]])),
        ("D8xC2", perm("D8xC2", [[1, 2, 3, 0, 4, 5], [0, 3, 2, 1, 4, 5], [0, 1, 2, 3, 5, 4]])),
        ("Q16", cayley("Q16", quaternion16())),
        ("C4:C4", cayley("C4:C4", semidirect(4, 4, 3))),
        ("Q8xC2", cayley("Q8xC2", quaternion8_times_c2())),
        ("C4xC2:C2", cayley("C4xC2:C2", c4c2_by_c2())),
        ("Pauli", cayley("Pauli", pauli(), shuffle_seed=16)),
    ]
    tables = []
    for name, doc in groups:
        if doc["kind"] == "permutation":
            t = table_of_perms([tuple(g) for g in doc["generators"]])
        else:
            t = doc["table"]
            e = next(x for x in range(len(t)) if all(t[x][y] == y for y in range(len(t))))
            if e != 0:
                # Swap the identity to index 0 only for the local checks.
                swap = list(range(len(t)))
                swap[0], swap[e] = e, 0
                t = [[swap[t[swap[a]][swap[b]]] for b in range(len(t))] for a in range(len(t))]
        assert len(t) == 16, name
        check_group(t)
        assert nonabelian(t), name
        tables.append((name, t))
    for (n1, t1), (n2, t2) in itertools.combinations(tables, 2):
        assert not isomorphic(t1, t2), (n1, n2)
    OUT.mkdir(exist_ok=True)
    for name, doc in groups:
        path = OUT / (name.replace(":", "_").lower() + ".json")
        path.write_text(json.dumps(doc, separators=(",", ":")) + "\n")
    print(f"wrote {len(groups)} groups to {OUT}")


if __name__ == "__main__":
    main()
