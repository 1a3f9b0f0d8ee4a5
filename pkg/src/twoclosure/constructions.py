"""Standard groups and ways of combining actions.

Everything returns a PermGroup on 0-indexed points.  Degrees are kept
explicit so fixed points can be added deliberately.
"""

from __future__ import annotations

from .errors import GroupError
from .group import PermGroup
from .perm import Permutation


def trivial(n, seed=0):
    return PermGroup(n, [], seed=seed)


def cyclic(n, seed=0):
    """C_n acting regularly on n points."""
    if n <= 1:
        return trivial(max(n, 1), seed=seed)
    return PermGroup(n, [Permutation.from_cycles(n, [tuple(range(n))])],
                     seed=seed, name=f"C{n}")


def symmetric(n, seed=0):
    if n <= 1:
        return trivial(max(n, 1), seed=seed)
    gens = [Permutation.from_cycles(n, [tuple(range(n))]),
            Permutation.from_cycles(n, [(0, 1)])]
    return PermGroup(n, gens, seed=seed, name=f"S{n}")


def alternating(n, seed=0):
    if n <= 2:
        return trivial(max(n, 1), seed=seed)
    gens = [Permutation.from_cycles(n, [(i, i + 1, i + 2)])
            for i in range(n - 2)]
    return PermGroup(n, gens, seed=seed, name=f"A{n}")


def dihedral(n, seed=0):
    """D_n of order 2n on the vertices of an n-gon."""
    if n < 3:
        raise GroupError("dihedral group needs n >= 3")
    rot = Permutation.from_cycles(n, [tuple(range(n))])
    ref = Permutation([(n - i) % n for i in range(n)])
    return PermGroup(n, [rot, ref], seed=seed, name=f"D{n}")


def elementary_abelian(p, k, seed=0):
    """(C_p)^k acting regularly on p^k points by translation."""
    n = p ** k
    gens = []
    for i in range(k):
        step = p ** i
        img = []
        for v in range(n):
            digit = (v // step) % p
            img.append(v + step if digit < p - 1 else v - step * (p - 1))
        gens.append(Permutation(img))
    return PermGroup(n, gens, seed=seed, name=f"C{p}^{k}")


def quaternion(seed=0):
    """Q8 acting regularly on its 8 elements 1,-1,i,-i,j,-j,k,-k."""
    # Points: 0:1, 1:-1, 2:i, 3:-i, 4:j, 5:-j, 6:k, 7:-k.
    left_i = Permutation([2, 3, 1, 0, 6, 7, 5, 4])
    left_j = Permutation([4, 5, 7, 6, 1, 0, 2, 3])
    return PermGroup(8, [left_i, left_j], seed=seed, name="Q8")


def direct_product(A, B, seed=0):
    """A x B acting on the disjoint union of the two domains."""
    n = A.degree + B.degree
    gens = [g.extend(n) for g in A.generators]
    shift = A.degree
    for h in B.generators:
        img = list(range(n))
        for i, v in enumerate(h.images):
            img[shift + i] = shift + v
        gens.append(Permutation(img))
    return PermGroup(n, gens, seed=seed)


def diagonal_double(A, seed=0):
    """A acting the same way on two copies of its domain."""
    n = 2 * A.degree
    shift = A.degree
    gens = []
    for g in A.generators:
        img = list(g.images) + [shift + v for v in g.images]
        gens.append(Permutation(img))
    return PermGroup(n, gens, seed=seed)


def wreath_imprimitive(A, B, seed=0):
    """A wr B in the imprimitive action on |A-domain| x |B-domain| points.

    Points are laid out block by block: block j holds points
    j*deg(A) .. (j+1)*deg(A)-1, and B permutes the blocks.
    """
    a, b = A.degree, B.degree
    n = a * b
    gens = []
    for j in (orb[0] for orb in B.orbits()):
        for g in A.generators:
            img = list(range(n))
            for i, v in enumerate(g.images):
                img[j * a + i] = j * a + v
            gens.append(Permutation(img))
    for h in B.generators:
        img = [0] * n
        for j in range(b):
            for i in range(a):
                img[j * a + i] = h.images[j] * a + i
        gens.append(Permutation(img))
    return PermGroup(n, gens, seed=seed)


def regular_representation(G, seed=0):
    """G acting on its own elements by right multiplication."""
    elements = sorted(G.elements(), key=lambda g: g.images)
    index = {g.images: i for i, g in enumerate(elements)}
    gens = []
    for g in G.generators:
        gens.append(Permutation(index[(x * g).images] for x in elements))
    return PermGroup(len(elements), gens, seed=seed)


def frobenius20(seed=0):
    """F20 = AGL(1,5), sharply 2-transitive on 5 points."""
    add = Permutation([(z + 1) % 5 for z in range(5)])
    mul = Permutation([(2 * z) % 5 for z in range(5)])
    return PermGroup(5, [add, mul], seed=seed, name="F20")


def gamma_l1_16(seed=0):
    """GammaL(1,16) of order 60 on the 15 nonzero vectors of GF(16).

    Field elements are bitmasks over x^4 + x + 1; the point for a nonzero
    field element v is v - 1.  Generators: multiplication by a primitive
    element and the Frobenius squaring map.
    """
    def times_x(v):
        v <<= 1
        if v & 16:
            v ^= 0b10011
        return v

    def square(v):
        out = 0
        for bit in range(4):
            if v & (1 << bit):
                out ^= _GF16_SQUARES[bit]
        return out

    mul = Permutation([times_x(v + 1) - 1 for v in range(15)])
    frob = Permutation([square(v + 1) - 1 for v in range(15)])
    return PermGroup(15, [mul, frob], seed=seed, name="GammaL(1,16)")


# Squares of the basis elements 1, x, x^2, x^3 in GF(16) = GF(2)[x]/(x^4+x+1).
_GF16_SQUARES = [0b0001, 0b0100, 0b0011, 0b1100]


def psl2(p, seed=0):
    """PSL(2,p) on the p+1 points of the projective line, p an odd prime.

    Points 0..p-1 are the affine line, point p is infinity.  Generators:
    z -> z+1 and z -> -1/z.
    """
    if p < 3:
        raise GroupError("psl2 needs an odd prime")
    inf = p
    shift = Permutation([(z + 1) % p for z in range(p)] + [inf])
    img = [0] * (p + 1)
    img[inf] = 0
    img[0] = inf
    for z in range(1, p):
        img[z] = (-pow(z, p - 2, p)) % p
    invert = Permutation(img)
    return PermGroup(p + 1, [shift, invert], seed=seed, name=f"PSL(2,{p})")
