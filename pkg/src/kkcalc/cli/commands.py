"""Dispatch of job commands to the engine.

Every command returns an ``Outcome``: ``data`` is plain JSON-ready content
(groups as ``{"free_rank", "torsion"}``, maps as integer row lists) and
``rows`` is the ``(label, value)`` table used for text output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

import kkcalc.kkengine as kkmod
from kkcalc import decomp
from kkcalc.errors import JobFileError
from kkcalc.functors import pontryagin_dual
from kkcalc.graded import GradedGroup, GradedMap
from kkcalc.groups import FgaGroup, GroupMap, subgroup as fga_subgroup
from kkcalc.sequences import LadderDiagram, LongSequence, check_exact, snake
from kkcalc.cli.grammar import print_group
from kkcalc.cli.jobfile import Job


@dataclass
class Outcome:
    data: dict[str, Any]
    rows: list[tuple[str, str]] = field(default_factory=list)


def group_json(G: FgaGroup | GradedGroup) -> dict:
    if isinstance(G, GradedGroup):
        return {"even": group_json(G.even), "odd": group_json(G.odd)}
    return {"free_rank": G.free_rank, "torsion": list(G.torsion)}


def map_json(f: GroupMap | GradedMap | None) -> dict | None:
    if f is None:
        return None
    if isinstance(f, GradedMap):
        return {"degree": f.degree, "even": map_json(f.even_map), "odd": map_json(f.odd_map)}
    return {"domain": group_json(f.domain), "codomain": group_json(f.codomain),
            "matrix": f.matrix.tolist()}


def _flag(b: bool | None) -> str:
    return "n/a" if b is None else ("true" if b else "false")


def _matrix_str(f: GroupMap) -> str:
    return str(f.matrix.tolist())


class Runner:
    """Evaluates commands of one job; ``primary`` switches text output to elementary divisors."""

    def __init__(self, job: Job, primary: bool = False):
        self.job = job
        self.primary = primary

    def g(self, G) -> str:
        return print_group(G, self.primary)

    def graded(self, cmd: dict, key: str) -> GradedGroup:
        G = self.job.group(cmd[key])
        if not isinstance(G, GradedGroup):
            raise JobFileError(f"{cmd['op']}: argument {key!r} must be a graded group '[even ; odd]'")
        return G

    def ungraded(self, cmd: dict, key: str) -> FgaGroup:
        G = self.job.group(cmd[key])
        if not isinstance(G, FgaGroup):
            raise JobFileError(f"{cmd['op']}: argument {key!r} must be an ungraded group")
        return G

    @staticmethod
    def degrees(cmd: dict) -> tuple[int, ...]:
        return (cmd["deg"],) if "deg" in cmd else (0, 1)

    def run(self, cmd: dict) -> Outcome:
        handler: Callable[[dict], Outcome] = getattr(self, "op_" + cmd["op"])
        return handler(cmd)

    def per_degree(self, cmd: dict, one: Callable[[int], Outcome]) -> Outcome:
        outs = [one(j) for j in self.degrees(cmd)]
        if len(outs) == 1:
            return outs[0]
        return Outcome({"degrees": [o.data for o in outs]}, [r for o in outs for r in o.rows])

    # ------------------------------------------------------------ decomposition

    def op_decompose(self, cmd):
        K = self.graded(cmd, "group")
        Kt, Kf, rec = decomp.decompose(K)
        data = {"input": group_json(K), "torsion": group_json(Kt), "free": group_json(Kf),
                "summand": rec.summand, "rows_exact": rec.rows_exact,
                "verticals_iso": rec.verticals_iso, "inclusion": map_json(rec.inclusion),
                "retraction": map_json(rec.retraction), "section": map_json(rec.section),
                "sum_iso": map_json(rec.sum_iso), "sum_iso_verified": rec.sum_iso.is_isomorphism()}
        rows = [("K", self.g(K)), ("K_t", self.g(Kt)), ("K_f", self.g(Kf)),
                ("summand", _flag(rec.summand)), ("rows exact", _flag(rec.rows_exact)),
                ("K_t + K_f -> K iso", _flag(data["sum_iso_verified"]))]
        return Outcome(data, rows)

    def op_primary(self, cmd):
        K = self.graded(cmd, "group")
        pd = decomp.primary_decomposition(K)
        data = {"input": group_json(K),
                "parts": {str(p): group_json(P) for p, P in pd.parts.items()},
                "iso": map_json(pd.iso), "iso_verified": pd.iso.is_isomorphism()}
        rows = [("K", self.g(K))] + [(f"p = {p}", self.g(P)) for p, P in pd.parts.items()]
        rows.append(("sum of parts -> K iso", _flag(data["iso_verified"])))
        return Outcome(data, rows)

    def op_realize(self, cmd):
        K = self.graded(cmd, "group")
        if "subgroup" in cmd:
            S = self.job.subgroup(cmd["subgroup"])
            if S.graded is None or S.ambient != K:
                raise JobFileError("realize: subgroup must be a graded subgroup of the given group")
            rec = decomp.realize(K, S.graded)
        else:
            rec = decomp.realize_torsion(K)
        data = {"input": group_json(K), "k_of_As": group_json(rec.k_of_As),
                "k_of_Aq": group_json(rec.k_of_Aq), "k_of_SAs": group_json(rec.k_of_SAs),
                "inclusion": map_json(rec.inclusion), "quotient": map_json(rec.quotient),
                "boundary": map_json(rec.boundary), "rows_exact": rec.rows_exact,
                "six_term_exact": check_exact(rec.six_term).exact,
                "verticals_iso": rec.verticals_iso, "summand": rec.summand,
                "retraction": map_json(rec.retraction), "section": map_json(rec.section)}
        rows = [("K_*(A)", self.g(K)), ("K_*(A_s)", self.g(rec.k_of_As)),
                ("K_*(A_q)", self.g(rec.k_of_Aq)), ("K_*(S A_s)", self.g(rec.k_of_SAs)),
                ("six-term exact", _flag(data["six_term_exact"])),
                ("rows exact", _flag(rec.rows_exact)), ("summand", _flag(rec.summand))]
        return Outcome(data, rows)

    # ------------------------------------------------------------ KK and K-theory

    def _uct(self, u: kkmod.UctResult, label: str) -> Outcome:
        finite = u.total.is_finite
        order_law = (u.total.order == u.hom_part.order * u.ext_part.order) if finite else None
        data = {"degree": u.degree, "total": group_json(u.total), "hom_part": group_json(u.hom_part),
                "ext_part": group_json(u.ext_part), "closure_of_zero": group_json(u.closure_of_zero),
                "hausdorff_quotient": group_json(u.hausdorff_quotient), "order_law": order_law}
        rows = [(label, self.g(u.total)), ("Hom part", self.g(u.hom_part)),
                ("Ext part", self.g(u.ext_part)), ("closure of zero", self.g(u.closure_of_zero))]
        return Outcome(data, rows)

    def op_kk(self, cmd):
        KA, KB = self.graded(cmd, "a"), self.graded(cmd, "b")
        return self.per_degree(cmd, lambda j: self._uct(kkmod.kk(KA, KB, j), f"KK_{j}"))

    def op_kdual(self, cmd):
        KA = self.graded(cmd, "a")
        return self.per_degree(cmd, lambda j: self._uct(kkmod.k_dual(KA, j), f"K^{j}"))

    def _kunneth(self, r: kkmod.KunnethResult, label: str) -> Outcome:
        data = {"degree": r.degree, "total": group_json(r.total),
                "tensor_part": group_json(r.tensor_part), "tor_part": group_json(r.tor_part),
                "alpha_iso": r.alpha_iso}
        rows = [(label, self.g(r.total)), ("tensor part", self.g(r.tensor_part)),
                ("Tor part", self.g(r.tor_part)), ("alpha iso", _flag(r.alpha_iso))]
        return Outcome(data, rows)

    def op_kunneth(self, cmd):
        KA, KB = self.graded(cmd, "a"), self.graded(cmd, "b")
        return self.per_degree(
            cmd, lambda j: self._kunneth(kkmod.kunneth_product(KA, KB, j), f"K_{j}(A (x) B)"))

    def op_coeff(self, cmd):
        KA, G = self.graded(cmd, "a"), self.ungraded(cmd, "g")
        return self.per_degree(
            cmd, lambda j: self._kunneth(kkmod.coefficients(KA, G, j), f"K_{j}(A; {self.g(G)})"))

    def op_dual(self, cmd):
        G = self.ungraded(cmd, "group")
        X = pontryagin_dual(G)
        return Outcome({"input": group_json(G), "dual": group_json(X)},
                       [("G", self.g(G)), ("X(G)", self.g(X))])

    def op_fourway(self, cmd):
        KA, KB = self.graded(cmd, "a"), self.graded(cmd, "b")

        def one(j):
            fw = kkmod.four_way(KA, KB, j)
            parts = {"tt": fw.tt, "tf": fw.tf, "ft": fw.ft, "ff": fw.ff}
            data = {"degree": fw.degree, **{k: group_json(v.total) for k, v in parts.items()},
                    "assembled": group_json(fw.assembled), "direct": group_json(fw.direct),
                    "agrees": fw.agrees}
            rows = [(f"KK_{j}(A_{k[0]}, B_{k[1]})", self.g(v.total)) for k, v in parts.items()]
            rows += [(f"assembled KK_{j}", self.g(fw.assembled)), (f"direct KK_{j}", self.g(fw.direct)),
                     ("agrees", _flag(fw.agrees))]
            return Outcome(data, rows)

        return self.per_degree(cmd, one)

    def _split(self, rep: kkmod.SplitPredicateReport, names: tuple[str, str, str]) -> Outcome:
        degs, rows = [], []
        for d in rep.degrees:
            left, mid, right = (d.sequence.groups[i] for i in (1, 2, 3))
            degs.append({"degree": d.degree, "onto": d.onto, "restriction": map_json(d.restriction),
                         "sequence": [group_json(x) for x in (left, mid, right)],
                         "exact": d.report.exact, "order_product_ok": d.order_product_ok})
            j = d.degree
            rows += [(f"deg {j}: onto", _flag(d.onto)),
                     (f"deg {j}: {names[0]}", self.g(left)), (f"deg {j}: {names[1]}", self.g(mid)),
                     (f"deg {j}: {names[2]}", self.g(right)),
                     (f"deg {j}: exact", _flag(d.report.exact)),
                     (f"deg {j}: order product", _flag(d.order_product_ok))]
        return Outcome({"onto": rep.onto, "exact": rep.exact, "degrees": degs}, rows)

    def op_split21(self, cmd):
        rep = kkmod.split_2_1(self.graded(cmd, "a"), self.graded(cmd, "b"))
        return self._split(rep, ("KK(A_f,B)", "KK(A,B)", "KK(A_t,B)"))

    def op_split26(self, cmd):
        rep = kkmod.split_2_6(self.graded(cmd, "a"), self.graded(cmd, "b"))
        return self._split(rep, ("KK(A,B_t)", "KK(A,B)", "KK(A,B_f)"))

    def op_thm43(self, cmd):
        KA, KB = self.graded(cmd, "a"), self.graded(cmd, "b")

        def one(j):
            r = kkmod.thm_4_3_check(KA, KB, j)
            data = {"degree": r.degree, "total": group_json(r.kk.total),
                    "ext_form": group_json(r.ext_form), "hom_qz_form": group_json(r.hom_qz_form),
                    "k_dual": group_json(r.k_dual), "dual_of_shift": group_json(r.dual_of_shift),
                    "dual_sum": group_json(r.dual_sum), "n": r.n, "verdicts": dict(r.verdicts)}
            rows = [(f"KK_{j}", self.g(r.kk.total)), ("Ext form", self.g(r.ext_form)),
                    ("Hom into (Q/Z)^n form", self.g(r.hom_qz_form)),
                    (f"K^{j}", self.g(r.k_dual)), (f"X(K_{1 - j})", self.g(r.dual_of_shift)),
                    (f"sum of {r.n} duals", self.g(r.dual_sum))]
            rows += [(k.replace("_", " "), _flag(v)) for k, v in r.verdicts.items()]
            return Outcome(data, rows)

        return self.per_degree(cmd, one)

    def op_thm44(self, cmd):
        KA = self.graded(cmd, "a")

        def one(j):
            r = kkmod.thm_4_4_sequence(KA, j)
            data = {"degree": r.degree, "hom_into_R": group_json(r.hom_into_R),
                    "dual": group_json(r.dual), "k_dual": group_json(r.k_dual.total),
                    "chi": map_json(r.chi), "chi_iso": r.chi_iso, "exact": r.report.exact}
            rows = [("Hom(K_%d, R)" % j, self.g(r.hom_into_R)), (f"X(K_{j})", self.g(r.dual)),
                    (f"K^{1 - j}", self.g(r.k_dual.total)), ("chi", _matrix_str(r.chi)),
                    ("chi iso", _flag(r.chi_iso)), ("exact", _flag(r.report.exact))]
            return Outcome(data, rows)

        return self.per_degree(cmd, one)

    # ------------------------------------------------------------ sequences

    def _sequence_json(self, seq: LongSequence) -> dict:
        rep = check_exact(seq)
        return {"groups": [group_json(G) for G in seq.groups],
                "maps": [f.matrix.tolist() for f in seq.maps],
                "exact": rep.exact,
                "nodes": [{"index": n.index, "exact": n.exact,
                           "witness": list(n.witness) if n.witness is not None else None,
                           "reason": n.reason} for n in rep.nodes]}

    def op_snake(self, cmd):
        m = {k: self.job.map(cmd[k]) for k in ("f", "g", "f2", "g2", "alpha", "beta", "gamma")}
        res = snake(LadderDiagram(**m))
        data = self._sequence_json(res.sequence)
        data["delta"] = map_json(res.delta)
        names = ["ker alpha", "ker beta", "ker gamma", "coker alpha", "coker beta", "coker gamma"]
        rows = [(n, self.g(G)) for n, G in zip(names, res.sequence.groups)]
        rows += [("delta", _matrix_str(res.delta)), ("exact", _flag(res.report.exact))]
        return Outcome(data, rows)

    def op_checkexact(self, cmd):
        seq = LongSequence.from_maps([self.job.map(r) for r in cmd["maps"]])
        data = self._sequence_json(seq)
        rows = [("groups", " -> ".join(self.g(G) for G in seq.groups)), ("exact", _flag(data["exact"]))]
        for n in data["nodes"]:
            if not n["exact"]:
                rows.append((f"node {n['index']}", f"{n['reason']}, witness {n['witness']}"))
        return Outcome(data, rows)

    def _embedding(self, cmd) -> GroupMap:
        if "map" in cmd:
            return self.job.map(cmd["map"])
        S = self.job.subgroup(cmd["subgroup"])
        if S.graded is not None:
            raise JobFileError(f"{cmd['op']}: subgroup must live in an ungraded group")
        return fga_subgroup(S.ambient, S.generators)[1]

    def op_ispure(self, cmd):
        emb = self._embedding(cmd)
        pure = decomp.is_pure(emb)
        data = {"subgroup": group_json(emb.domain), "ambient": group_json(emb.codomain),
                "tested_orders": decomp.purity_test_orders(emb), "pure": pure}
        return Outcome(data, [("H", self.g(emb.domain)), ("G", self.g(emb.codomain)),
                              ("pure", _flag(pure))])

    def op_issummand(self, cmd):
        emb = self._embedding(cmd)
        rep = decomp.is_summand(emb)
        data = {"subgroup": group_json(emb.domain), "ambient": group_json(emb.codomain),
                "summand": rep.summand, "retraction": map_json(rep.retraction)}
        rows = [("H", self.g(emb.domain)), ("G", self.g(emb.codomain)), ("summand", _flag(rep.summand))]
        if rep.retraction is not None:
            rows.append(("retraction", _matrix_str(rep.retraction)))
        return Outcome(data, rows)
