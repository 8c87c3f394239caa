"""Shared test helpers: independent oracles and small-graph generators."""

from __future__ import annotations

import random

from mvsum.graph import Graph, build_graph, union
from mvsum.ntriples import RDF_TYPE, Term, Triple
from mvsum.summary import Model, Summary, summarize
from mvsum.summary_io import format_summary


def iri(name: str) -> Term:
    return Term.iri(f"urn:x:{name}")


def p(name: str) -> Term:
    return Term.iri(f"urn:p:{name}")


def cls(name: str) -> Term:
    return Term.iri(f"urn:c:{name}")


RDF_TYPE_TERM = Term.iri(RDF_TYPE)


def graph_of(*triples: tuple) -> Graph:
    """Build a graph from (subject, predicate, object) Term triples."""
    return build_graph(Triple(s, pr, o) for s, pr, o in triples)


# --- independent O(|V|^2) partition oracle ------------------------------------
#
# Recomputes each vertex's features straight from the raw edge set and label
# map (not from the graph's derived out_labels), then groups vertices by
# pairwise feature comparison. Deliberately naive; used to check summarize.

def naive_features(g: Graph, v: Term, model: Model):
    attrs = frozenset(pr for (s, pr, _) in g.edges if s == v)
    classes = frozenset(g.vertex_labels.get(v, set()))
    if model is Model.AC:
        return ("AC", attrs)
    if model is Model.CC:
        return ("CC", classes)
    return ("ACC", attrs, classes)


def naive_partition(g: Graph, model: Model) -> set[frozenset]:
    groups: list[tuple[object, set[Term]]] = []
    for v in g.vertices:
        features = naive_features(g, v, model)
        for existing, members in groups:
            if existing == features:
                members.add(v)
                break
        else:
            groups.append((features, {v}))
    return {frozenset(members) for _, members in groups}


def partition_of(s: Summary) -> set[frozenset]:
    return {frozenset(payload.members) for payload in s.payloads.values()}


# --- seeded random graphs ------------------------------------------------------

def random_graph(rng: random.Random, max_vertices: int = 12, max_edges: int = 20,
                 n_predicates: int = 4, n_classes: int = 3, type_prob: float = 0.4,
                 blank_prob: float = 0.2, literal_prob: float = 0.15) -> Graph:
    n = rng.randint(0, max_vertices)
    vertices = []
    for i in range(n):
        if rng.random() < blank_prob:
            vertices.append(Term.blank(f"b{i}"))
        else:
            vertices.append(iri(f"v{i}"))
    triples = []
    if vertices:
        for _ in range(rng.randint(0, max_edges)):
            s = rng.choice(vertices)
            pr = p(str(rng.randrange(n_predicates)))
            if rng.random() < literal_prob:
                o = Term.literal(f"lit{rng.randrange(3)}")
            else:
                o = rng.choice(vertices)
            triples.append(Triple(s, pr, o))
        for v in vertices:
            if rng.random() < type_prob:
                triples.append(Triple(v, RDF_TYPE_TERM, cls(str(rng.randrange(n_classes)))))
    return build_graph(triples)


def canonical_bytes(s: Summary) -> bytes:
    return format_summary(s).encode("utf-8")


def oracle_merged(g1: Graph, g2: Graph, model: Model, digest: str = "sha256") -> Summary:
    """The merge oracle: summarize the union graph directly."""
    return summarize(union(g1, g2), model, digest=digest)
