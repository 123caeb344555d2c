"""Named verification suites, canned model corruptions, and the JSON export."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from . import cliques, definability as dfn, pencils, subspaces as sub
from .model import Model, ModelConfig, bits
from .report import CERTIFIED, SAMPLED, VerificationReport

SUITES = ("two_in_two", "define_lines", "define_cones_minkowski", "line_split", "adjacency",
          "vertex_test", "reconstruction", "adjac2cone", "fact31", "fact32", "fact33", "thm34",
          "thm35", "pencil_sanity", "cliques_a", "cliques_b", "cliques_c")

MUTATIONS = ("duplicate_p2", "drop_cone", "mislabel_line")


@dataclass
class RunOptions:
    mode: str = CERTIFIED
    seed: int = 0
    samples: int | None = None
    mutation: str | None = None


def mutate(gr: pencils.Grassmann, mutation: str | None) -> pencils.Grassmann:
    """Return a corrupted copy of the Grassmann space (or the original for None)."""
    if mutation is None:
        return gr
    if mutation == "duplicate_p2":
        keep = set(dfn.CONE_TAGS) | {sub.MINKOWSKI_PLANE}
        zi = next(i for i, z in enumerate(gr.p2) if z.tag not in keep and len(gr.contains[i]) >= 2)
        return gr.with_p2(gr.p2 + [gr.p2[zi]])
    if mutation == "drop_cone":
        zi = next(i for i, z in enumerate(gr.p2) if z.tag in dfn.CONE_TAGS)
        return gr.with_p2(gr.p2[:zi] + gr.p2[zi + 1:])
    if mutation == "mislabel_line":
        kinds = list(gr.kinds)
        i = kinds.index("G")
        kinds[i] = "A"
        return gr.with_kinds(kinds)
    raise ValueError(f"unknown mutation {mutation!r}")


def merge(lemma: str, mode: str, parts: list[VerificationReport]) -> VerificationReport:
    rep = VerificationReport(lemma, mode)
    for p in parts:
        rep.instantiations += p.instantiations
        if p.counterexample_count and rep.counterexample_count == 0:
            rep.first_counterexample = {"check": p.lemma, "witness": p.first_counterexample}
        rep.counterexample_count += p.counterexample_count
        for k, v in p.universe.items():
            rep.universe[f"{p.lemma}.{k}"] = v
        rep.details[p.lemma] = dict(p.details, instantiations=p.instantiations,
                                    counterexamples=p.counterexample_count)
        rep.wall_time += p.wall_time
    return rep


def run_suite(model: Model, suite: str, opt: RunOptions) -> VerificationReport:
    if suite not in SUITES:
        raise KeyError(suite)
    mode = opt.mode
    kw = dict(mode=mode, seed=opt.seed, samples=opt.samples)
    if suite in ("two_in_two", "define_lines", "define_cones_minkowski", "line_split", "fact32"):
        gr = mutate(pencils.build_grassmann(model), opt.mutation)
        if suite == "two_in_two":
            return dfn.check_two_in_two(model, gr)
        if suite == "define_lines":
            return dfn.check_define_lines(gr)
        if suite == "define_cones_minkowski":
            return dfn.check_cones_minkowski(gr)
        if suite == "line_split":
            return merge(suite, CERTIFIED, [dfn.check_line_split(gr), dfn.minkowski_descent(model)])
        return merge(suite, CERTIFIED, [dfn.census_check(model, gr),
                                        sub.dimension_check(model, seed=opt.seed, psub2=True)])
    if suite in ("adjacency", "vertex_test", "reconstruction", "adjac2cone"):
        c = dfn.conic_structure(model, strict=False)
        if suite == "adjacency":
            return dfn.check_adjacency(model, c, **kw)
        if suite == "vertex_test":
            return merge(suite, mode, [dfn.check_vertex_test(model, c, **kw),
                                       dfn.check_two_generator_lemma(model, c, **kw)])
        if suite == "reconstruction":
            return dfn.reconstruct_point_line(model, c, **kw)
        return dfn.check_adjacent_pairs(model, c, **kw)
    if suite == "fact31":
        return sub.maximal_proper_check(model)
    if suite == "fact33":
        return sub.nested_class_check(model)
    if suite == "thm34":
        return sub.restriction_check(model, seed=opt.seed, psub2=True)
    if suite == "thm35":
        return sub.semiaffine_check(model)
    if suite == "pencil_sanity":
        return pencils.pencil_sanity(model)
    case = suite[-1]
    scope = "neighbourhood" if mode == SAMPLED else None
    return cliques.clique_report(model, case, scope=scope, seed=opt.seed)


# ------------------------------------------------------------ export

def _point_string(coords) -> str:
    return ",".join(str(c) for c in coords)


def export_core(model: Model) -> dict:
    cfg = model.cfg
    return {
        "config": {"q": cfg.q, "vertex_dim": cfg.vertex_dim, "base_dim": cfg.base_dim,
                   "quadric": cfg.quadric},
        "points": [_point_string(model.point_coords(p)) for p in range(model.num_points)],
        "lines": [{"id": L.id, "kind": L.kind, "points": list(L.points)} for L in model.lines],
    }


def export_document(model: Model) -> dict:
    doc = export_core(model)
    doc["cycles"] = [{"id": C.id, "points": list(C.points)} for C in model.cycles]
    doc["subspaces2"] = [{"class": z.tag.nickname, "params": z.tag.params, "points": bits(z.mask)}
                         for z in sub.enumerate_psub(model, 2)]
    doc["pencils"] = [{"kind": p.kind, "anchor": p.anchor, "members": list(p.members)}
                      for kind in pencils.PENCIL_KINDS for p in pencils.enumerate_pencils(model, kind)]
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=False, separators=(",", ":"), ensure_ascii=True) + "\n"


def fingerprint(model: Model) -> str:
    """sha256 of the primitive part of the export (config, points, lines)."""
    return hashlib.sha256(dumps(export_core(model)).encode()).hexdigest()


def load_export(text: str) -> dict:
    return json.loads(text)


def config_of(doc: dict) -> ModelConfig:
    c = doc["config"]
    return ModelConfig(int(c["q"]), int(c["vertex_dim"]), int(c["base_dim"]), c["quadric"])
