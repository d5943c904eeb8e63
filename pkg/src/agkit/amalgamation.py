"""Deciding amalgamation in the subvarieties, and the derived classification.

The decision procedure for a diagram <A, f, B, g, C> in a variety V generated
by its finite SI members: collect every pair (h: B -> S, k: C -> S) with S an
SI member of V and h o f = k o g.  The diagram is amalgamable iff those pairs
jointly separate the points of B and of C; the amalgam is then the product of
the S over a covering set of pairs with the tupled maps.

Completeness: any amalgam restricts to the finite subalgebra generated by the
images (the variety is locally finite), every finite member is a subdirect
product of SI members, and composing with the projections yields exactly such
pairs.  Soundness: the constructed product lies in V and the tupled maps are
embeddings by the separation property.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import (FiniteAlgebra, builtin, direct_product,
                      enumerate_subalgebras, subalgebra)
from .congruence import cep_instance, classify
from .morphisms import (Homomorphism, enumerate_embeddings, enumerate_homs,
                        tupled_hom)
from .variety import VarietyDescriptor, require_in_variety, variety


@dataclass(frozen=True)
class Diagram:
    base: FiniteAlgebra
    left: FiniteAlgebra
    right: FiniteAlgebra
    f: Homomorphism  # base -> left
    g: Homomorphism  # base -> right

    def __post_init__(self):
        if self.f.source != self.base or self.f.target != self.left:
            raise ValueError("f must map base -> left")
        if self.g.source != self.base or self.g.target != self.right:
            raise ValueError("g must map base -> right")
        if not (self.f.injective and self.g.injective):
            raise ValueError("diagram maps must be embeddings")

    def describe(self) -> str:
        return f"<{self.base.name}; {self.left.name}, {self.right.name}>"


def diagram(base: FiniteAlgebra, left: FiniteAlgebra, right: FiniteAlgebra,
            f: Homomorphism | None = None, g: Homomorphism | None = None) -> Diagram:
    """Build a diagram, defaulting to the first embedding in enumeration order."""
    if f is None:
        embeddings = enumerate_embeddings(base, left)
        if not embeddings:
            raise ValueError(f"no embedding {base.name} -> {left.name}")
        f = embeddings[0]
    if g is None:
        embeddings = enumerate_embeddings(base, right)
        if not embeddings:
            raise ValueError(f"no embedding {base.name} -> {right.name}")
        g = embeddings[0]
    return Diagram(base, left, right, f, g)


@dataclass(frozen=True)
class HomPair:
    si_name: str
    h: Homomorphism  # left -> SI
    k: Homomorphism  # right -> SI


@dataclass(frozen=True)
class Amalgam:
    product: FiniteAlgebra
    f1: Homomorphism  # left -> product
    g1: Homomorphism  # right -> product
    pairs: tuple[HomPair, ...]

    @property
    def amalgamable(self) -> bool:
        return True

    def as_dict(self) -> dict:
        return {
            "result": "amalgam",
            "factors": [p.si_name for p in self.pairs],
            "f1": [list(p.h.mapping) for p in self.pairs],
            "g1": [list(p.k.mapping) for p in self.pairs],
        }


@dataclass(frozen=True)
class Obstruction:
    side: str  # "left" | "right"
    pair: tuple[int, int]  # least unseparated element pair on that side
    hom_census: dict[str, tuple[int, int, int]]  # SI -> (#homs left, #homs right, #pairs)

    @property
    def amalgamable(self) -> bool:
        return False

    def as_dict(self) -> dict:
        return {
            "result": "obstruction",
            "side": self.side,
            "pair": list(self.pair),
            "hom_census": {k: list(v) for k, v in self.hom_census.items()},
        }


AmalgamationResult = Amalgam | Obstruction


def _compatible_pairs(v: VarietyDescriptor, d: Diagram):
    pairs: list[HomPair] = []
    census: dict[str, tuple[int, int, int]] = {}
    base_range = range(d.base.size)
    for si in v.si_algebras():
        homs_left = enumerate_homs(d.left, si)
        homs_right = enumerate_homs(d.right, si)
        count = 0
        for h, k in itertools.product(homs_left, homs_right):
            if all(h(d.f(x)) == k(d.g(x)) for x in base_range):
                pairs.append(HomPair(si.name, h, k))
                count += 1
        census[si.name] = (len(homs_left), len(homs_right), count)
    return pairs, census


def _uncovered(size: int, separated) -> tuple[int, int] | None:
    for x, y in itertools.combinations(range(size), 2):
        if not separated(x, y):
            return (x, y)
    return None


def decide_amalgamation(v: VarietyDescriptor, d: Diagram) -> AmalgamationResult:
    """Decide one diagram; returns a machine-checkable certificate either way.

    Amalgam certificates re-verify on construction (embedding checks, the
    commuting square, membership of the product).  Obstruction certificates
    carry the least unseparated pair plus the per-SI hom census and can be
    re-verified by exhaustive map enumeration.
    """
    require_in_variety(d.left, v)
    require_in_variety(d.right, v)
    pairs, census = _compatible_pairs(v, d)

    chosen: list[HomPair] = []

    def cover(size: int, project) -> tuple[int, int] | None:
        for x, y in itertools.combinations(range(size), 2):
            if any(project(p)(x) != project(p)(y) for p in chosen):
                continue
            for p in pairs:
                if project(p)(x) != project(p)(y):
                    chosen.append(p)
                    break
            else:
                return (x, y)
        return None

    missed = cover(d.left.size, lambda p: p.h)
    if missed is not None:
        return Obstruction("left", missed, census)
    missed = cover(d.right.size, lambda p: p.k)
    if missed is not None:
        return Obstruction("right", missed, census)

    if not chosen:
        if pairs:
            chosen.append(pairs[0])  # nothing to separate; one factor suffices
        else:
            # both sides are trivial: the trivial algebra amalgamates them
            trivial = FiniteAlgebra(
                name="1", size=1, labels=("0",), join=((0,),), meet=((0,),),
                star=(0,), quote=(0,), zero=0, one=0, validate=False)
            f1 = Homomorphism(d.left, trivial, (0,) * d.left.size)
            g1 = Homomorphism(d.right, trivial, (0,) * d.right.size)
            return Amalgam(trivial, f1, g1, ())

    factors = [builtin(p.si_name) for p in chosen]
    product = direct_product(factors)
    f1 = tupled_hom(d.left, [p.h for p in chosen], product)
    g1 = tupled_hom(d.right, [p.k for p in chosen], product)
    if not (f1.injective and g1.injective):  # pragma: no cover
        raise AssertionError("pair cover failed to separate")
    if f1.after(d.f) != g1.after(d.g):  # pragma: no cover
        raise AssertionError("amalgam square does not commute")
    require_in_variety(product, v)
    return Amalgam(product, f1, g1, tuple(chosen))


# --- classification over all SI diagrams --------------------------------------

@dataclass(frozen=True)
class DiagramResult:
    base_name: str
    left_name: str
    right_name: str
    f: Homomorphism
    g: Homomorphism
    result: AmalgamationResult


@dataclass(frozen=True)
class APReport:
    variety_name: str
    hereditarily_si: bool
    cep_spot_checks: bool
    diagrams: tuple[DiagramResult, ...]

    @property
    def has_ap(self) -> bool:
        return all(d.result.amalgamable for d in self.diagrams)

    @property
    def preconditions_ok(self) -> bool:
        return self.hereditarily_si and self.cep_spot_checks

    def obstructed(self) -> tuple[DiagramResult, ...]:
        return tuple(d for d in self.diagrams if not d.result.amalgamable)


def _hereditarily_si(v: VarietyDescriptor) -> bool:
    for si in v.si_algebras():
        for universe in enumerate_subalgebras(si):
            if not classify(subalgebra(si, universe)).subdirectly_irreducible:
                return False
    return True


def _cep_spot_checks(v: VarietyDescriptor) -> bool:
    sis = v.si_algebras()
    supers: list[FiniteAlgebra] = list(sis)
    supers.extend(direct_product([s, t]) for s in sis for t in sis)
    for sub in sis:
        for sup in supers:
            for embedding in enumerate_embeddings(sub, sup):
                if not cep_instance(sub, sup, embedding):
                    return False
    return True


def si_diagrams(v: VarietyDescriptor):
    """Every diagram of SI members over every embedding pair, in a fixed order.

    All embeddings are enumerated, not one per isomorphism class: with the
    constants pinning the embeddings of 2 this stays small and avoids an
    unproven symmetry shortcut.
    """
    sis = v.si_algebras()
    for base in sis:
        for left in sis:
            fs = enumerate_embeddings(base, left)
            if not fs:
                continue
            for right in sis:
                gs = enumerate_embeddings(base, right)
                for f, g in itertools.product(fs, gs):
                    yield Diagram(base, left, right, f, g)


def classify_ap(v: VarietyDescriptor) -> APReport:
    """Decide AP for a variety by deciding every SI diagram.

    The reduction to SI diagrams needs the congruence extension property and
    hereditarily-SI generators; both hypotheses are re-verified computationally
    on each run rather than assumed.
    """
    results = tuple(
        DiagramResult(d.base.name, d.left.name, d.right.name, d.f, d.g,
                      decide_amalgamation(v, d))
        for d in si_diagrams(v))
    return APReport(v.name, _hereditarily_si(v), _cep_spot_checks(v), results)


# --- applications --------------------------------------------------------------

@dataclass(frozen=True)
class JointEmbeddingResult:
    pair: tuple[str, str]
    embeddable: bool


@dataclass(frozen=True)
class ApplicationsReport:
    variety_name: str
    has_ap: bool
    cep_spot_checks: bool
    tp: bool
    residually_small: bool
    ei: bool
    jep_on_si_pairs: tuple[JointEmbeddingResult, ...]
    embedding_property: bool
    model_companion: bool
    two_in_amal: bool


def applications(v: VarietyDescriptor) -> ApplicationsReport:
    """Derived properties.

    tp: transferability = AP plus CEP (the CEP half is spot-verified).
    ei: enough injectives = tp plus residual smallness; residual smallness is
        immediate here (finitely many finite SI members).
    jep_on_si_pairs: joint embeddability of SI pairs, decided as amalgamation
        over the minimal algebra 2 (2 embeds uniquely in every member, so the
        square commutes for free).
    embedding_property: via the minimal algebra, equivalent to AP; reported as
        the conjunction of the joint-embedding results.
    model_companion: a locally finite variety in a finite language with AP has
        one; the flag simply mirrors has_ap.
    two_in_amal: False iff some SI diagram based at 2 is obstructed
        (refutation-only semantics; True means no refutation was found).
    """
    ap_report = classify_ap(v)
    has_ap = ap_report.has_ap
    cep_ok = ap_report.cep_spot_checks
    tp = has_ap and cep_ok
    residually_small = True  # finitely many finite SI members
    ei = tp and residually_small

    two = builtin("2")
    jep = []
    for left, right in itertools.combinations_with_replacement(
            sorted(v.si_names), 2):
        d = diagram(two, builtin(left), builtin(right))
        result = decide_amalgamation(v, d)
        jep.append(JointEmbeddingResult((left, right), result.amalgamable))
    embedding_property = all(r.embeddable for r in jep)

    refutation = refute_amal_base(v, two)
    return ApplicationsReport(
        variety_name=v.name,
        has_ap=has_ap,
        cep_spot_checks=cep_ok,
        tp=tp,
        residually_small=residually_small,
        ei=ei,
        jep_on_si_pairs=tuple(jep),
        embedding_property=embedding_property,
        model_companion=has_ap,
        two_in_amal=refutation is None,
    )


def refute_amal_base(v: VarietyDescriptor,
                     algebra: FiniteAlgebra) -> tuple[Diagram, Obstruction] | None:
    """Search for a diagram based at `algebra` with no amalgam in v.

    B and C range over the SI members and f, g over all embeddings.  A hit
    refutes membership in the amalgamation class; absence of a hit proves
    nothing (refutation-only semantics).
    """
    require_in_variety(algebra, v)
    for left_name in sorted(v.si_names):
        left = builtin(left_name)
        fs = enumerate_embeddings(algebra, left)
        if not fs:
            continue
        for right_name in sorted(v.si_names):
            right = builtin(right_name)
            gs = enumerate_embeddings(algebra, right)
            for f, g in itertools.product(fs, gs):
                d = Diagram(algebra, left, right, f, g)
                result = decide_amalgamation(v, d)
                if isinstance(result, Obstruction):
                    return d, result
    return None


def theorem_diagrams() -> dict[str, tuple[str, str, str, str]]:
    """The obstructed diagrams witnessing the four non-amalgamable varieties:
    (variety, base, left, right), keyed by a stable id.  The top variety gets
    both candidate diagrams (the stated one and the one its derivation uses)."""
    return {
        "3.4": ("G", "2", "3_dblst", "3_klst"),
        "3.11": ("V_DBLST_DMBA", "2", "3_dblst", "4_dmba"),
        "3.17": ("V_KLST_DMBA", "2", "3_klst", "4_dmba"),
        "3.22a": ("AG", "2", "3_dblst", "4_dmba"),
        "3.22b": ("AG", "2", "3_klst", "4_dmba"),
    }


def decide_theorem_diagrams() -> dict[str, AmalgamationResult]:
    out = {}
    for key, (vname, base, left, right) in theorem_diagrams().items():
        d = diagram(builtin(base), builtin(left), builtin(right))
        out[key] = decide_amalgamation(variety(vname), d)
    return out


def brute_force_verify_obstruction(v: VarietyDescriptor, d: Diagram,
                                   obstruction: Obstruction) -> bool:
    """Re-verify an obstruction certificate independently of the backtracking
    searcher: enumerate ALL maps into each SI member, filter homomorphisms by
    direct table checks, and confirm the recorded pair stays unseparated."""
    def all_homs(src: FiniteAlgebra, tgt: FiniteAlgebra):
        for mapping in itertools.product(range(tgt.size), repeat=src.size):
            if mapping[src.zero] != tgt.zero or mapping[src.one] != tgt.one:
                continue
            if any(mapping[src.star[x]] != tgt.star[mapping[x]]
                   or mapping[src.quote[x]] != tgt.quote[mapping[x]]
                   for x in range(src.size)):
                continue
            if any(mapping[src.join[x][y]] != tgt.join[mapping[x]][mapping[y]]
                   or mapping[src.meet[x][y]] != tgt.meet[mapping[x]][mapping[y]]
                   for x in range(src.size) for y in range(src.size)):
                continue
            yield mapping

    x, y = obstruction.pair
    for si in v.si_algebras():
        for h in all_homs(d.left, si):
            for k in all_homs(d.right, si):
                if any(h[d.f(z)] != k[d.g(z)] for z in range(d.base.size)):
                    continue
                separated = (h[x] != h[y]) if obstruction.side == "left" else (k[x] != k[y])
                if separated:
                    return False
    return True
