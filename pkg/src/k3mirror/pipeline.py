"""End-to-end analysis of (W, G) pairs and regeneration of the golden tables."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .diaggrp import (SymmetryGroup, dual_group, format_group_literal, generate, j_group,
                      parse_group_literal, sl_group, subgroups_between)
from .errors import InvalidPair
from .fixedlocus import resolve_fixed_locus
from .invpoly import InvertiblePolynomial, enumerate_form_p
from .weights import PRIMES, WeightSystem, admissible_families, is_calabi_yau

# ---------------------------------------------------------------------------
# golden data


@dataclass(frozen=True)
class GoldenRow:
    index: int
    r: int
    a: int
    generators: str | None = None
    dual_generators: str | None = None


@dataclass(frozen=True)
class GoldenEntry:
    prime: int
    no: str
    weights: tuple[int, ...]
    degree: int
    polynomial: str
    sl_index: int
    dual: str
    rows: tuple[GoldenRow, ...]

    @property
    def poly(self) -> InvertiblePolynomial:
        return InvertiblePolynomial.parse(self.polynomial)


def _parse_golden(text: str) -> tuple[GoldenEntry, ...]:
    out = []
    for e in json.loads(text):
        rows = tuple(GoldenRow(r["index"], r["r"], r["a"], r.get("generators"),
                               r.get("dual_generators")) for r in e["rows"])
        out.append(GoldenEntry(e["prime"], e["no"], tuple(e["weights"]), e["degree"],
                               e["polynomial"], e["sl_index"], e["dual"], rows))
    return tuple(out)


@lru_cache(maxsize=None)
def _packaged_golden() -> tuple[GoldenEntry, ...]:
    return _parse_golden(resources.files("k3mirror").joinpath("data/golden_tables.json")
                         .read_text("utf-8"))


def load_golden(path: str | Path | None = None) -> tuple[GoldenEntry, ...]:
    if path is None:
        return _packaged_golden()
    return _parse_golden(Path(path).read_text("utf-8"))


class Catalog:
    """Golden entries for one prime, looked up by canonical polynomial."""

    def __init__(self, entries, p: int):
        self.p = p
        self.entries = [e for e in entries if e.prime == p]
        self.by_matrix = {}
        for e in self.entries:
            self.by_matrix[e.poly.canonical().matrix] = e
        self.by_no = {e.no: e for e in self.entries}

    def lookup(self, W: InvertiblePolynomial) -> GoldenEntry | None:
        return self.by_matrix.get(W.canonical().matrix)


# ---------------------------------------------------------------------------
# analysis


@dataclass
class AnalysisRecord:
    yonemura_no: str | None
    weight_system: str
    polynomial: str
    p: int
    group_generators: str
    index: int
    sl_index: int
    r: int
    a: int
    g: int | None
    n: int
    k: int | None
    dual_polynomial: str
    dual_polynomial_no: str | None
    dual_group_generators: str
    dual_group_index: int
    dual_r: int
    dual_a: int
    mirror_check: bool

    def to_dict(self) -> dict:
        return asdict(self)


def check_pair(W: InvertiblePolynomial, G: SymmetryGroup, p: int):
    if p not in PRIMES:
        raise InvalidPair(f"p must be one of {PRIMES}")
    if not W.is_form_p(p):
        raise InvalidPair(f"{W} is not of the form v^{p} + f(other variables)")
    if not is_calabi_yau(W.weight_system):
        raise InvalidPair(f"weights of {W} do not sum to the degree")
    if G.host != W.matrix:
        raise InvalidPair("group is not a group of symmetries of W")
    J, S = j_group(W), sl_group(W)
    if not (J <= G and G <= S):
        raise InvalidPair("the group must satisfy J_W <= G <= SL_W")
    return J, S


def group_from_literal(W: InvertiblePolynomial, text: str | None) -> SymmetryGroup:
    """``J_W`` together with the generators in ``text``."""
    gens = parse_group_literal(text or "")
    try:
        return generate(W.matrix, gens, base=j_group(W))
    except ValueError as exc:
        raise InvalidPair(str(exc)) from exc


def group_by_index(W: InvertiblePolynomial, index: int) -> SymmetryGroup:
    J, S = j_group(W), sl_group(W)
    groups = [G for G in subgroups_between(J, S) if G.order // J.order == index]
    if not groups:
        raise InvalidPair(f"no group with |G/J_W| = {index}")
    if len(groups) > 1:
        raise InvalidPair(f"{len(groups)} groups have |G/J_W| = {index}; pass generators instead")
    return groups[0]


def analyze(W: InvertiblePolynomial, G: SymmetryGroup, p: int, catalog: Catalog | None = None,
            ) -> AnalysisRecord:
    J, S = check_pair(W, G, p)
    if catalog is None:
        catalog = Catalog(load_golden(), p)
    inv, lat = resolve_fixed_locus(W, G, p)
    Wt = W.transpose()
    Gt = dual_group(G)
    Jt = j_group(Wt)
    _, dual_lat = resolve_fixed_locus(Wt, Gt, p)
    entry, dual_entry = catalog.lookup(W), catalog.lookup(Wt)
    return AnalysisRecord(
        yonemura_no=entry.no if entry else None,
        weight_system=str(W.weight_system),
        polynomial=str(W),
        p=p,
        group_generators=format_group_literal(G.reporting_generators(J)),
        index=G.order // J.order,
        sl_index=S.order // J.order,
        r=lat.r, a=lat.a, g=inv.g, n=inv.n, k=inv.k,
        dual_polynomial=str(Wt),
        dual_polynomial_no=dual_entry.no if dual_entry else None,
        dual_group_generators=format_group_literal(Gt.reporting_generators(Jt)),
        dual_group_index=Gt.order // Jt.order,
        dual_r=dual_lat.r, dual_a=dual_lat.a,
        mirror_check=(dual_lat.r, dual_lat.a) == (20 - lat.r, lat.a),
    )


# ---------------------------------------------------------------------------
# table verification


@dataclass
class VerificationReport:
    p: int
    records: list[AnalysisRecord] = field(default_factory=list)
    mismatches: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    golden_rows: int = 0
    matched_rows: int = 0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {"p": self.p, "ok": self.ok, "golden_rows": self.golden_rows,
                "matched_rows": self.matched_rows, "mismatches": self.mismatches,
                "notes": self.notes, "records": [r.to_dict() for r in self.records]}

    def render(self, fmt: str = "md") -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2)
        cols = list(AnalysisRecord.__dataclass_fields__)
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
            writer.writeheader()
            for r in self.records:
                writer.writerow(r.to_dict())
            return buf.getvalue()
        if fmt != "md":
            raise ValueError(f"unknown format {fmt}")
        show = ["yonemura_no", "polynomial", "sl_index", "index", "group_generators",
                "r", "a", "g", "n", "k", "dual_polynomial_no", "dual_group_index", "mirror_check"]
        lines = [f"# p = {self.p}: {self.matched_rows}/{self.golden_rows} golden rows matched",
                 "", "| " + " | ".join(show) + " |", "|" + "---|" * len(show)]
        for r in self.records:
            d = r.to_dict()
            lines.append("| " + " | ".join("-" if d[c] is None else str(d[c]) for c in show) + " |")
        lines.append("")
        lines += [f"- note: {n}" for n in self.notes]
        lines += [f"- MISMATCH: {m}" for m in self.mismatches] or ["- no mismatches"]
        return "\n".join(lines) + "\n"


def _map_generator(text: str, perm) -> str:
    gens = parse_group_literal(text)
    return format_group_literal(type(g)(tuple(g.g[perm[k]] for k in range(4))) for g in gens)


def _analyze_family(args):
    ws, p, golden_path = args
    catalog = Catalog(load_golden(golden_path), p)
    out = []
    for W in enumerate_form_p(ws, p):
        J, S = j_group(W), sl_group(W)
        records = [analyze(W, G, p, catalog) for G in subgroups_between(J, S)]
        out.append((W, records))
    return out


def verify_tables(p: int, golden_path=None, jobs: int = 1) -> VerificationReport:
    """Regenerate every (W, G) pair for ``p`` and diff against the golden table."""
    catalog = Catalog(load_golden(golden_path), p)
    report = VerificationReport(p)
    families = [f.weight_system for f in admissible_families(p)]
    tasks = [(ws, p, golden_path) for ws in families]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_analyze_family, tasks))
    else:
        results = [_analyze_family(t) for t in tasks]

    seen = set()
    by_poly: dict[str, list[AnalysisRecord]] = {}
    for fam in results:
        for W, records in fam:
            entry = catalog.lookup(W)
            if entry is None:
                report.mismatches.append(f"{W}: enumerated polynomial has no golden entry")
                report.records += records
                continue
            seen.add(entry.no)
            by_poly[entry.no] = records
    golden_sorted = sorted(catalog.entries, key=_table_key)
    for entry in golden_sorted:
        report.golden_rows += len(entry.rows)
        if entry.no not in seen:
            report.mismatches.append(f"{entry.no}: golden polynomial {entry.polynomial} not enumerated")
            continue
        records = by_poly[entry.no]
        report.records += records
        report.matched_rows += _compare_entry(entry, records, catalog, report)
    _check_duality(report, catalog)
    _add_notes(report)
    return report


def _table_key(e: GoldenEntry):
    digits = "".join(c for c in e.no if c.isdigit())
    return int(digits), e.no


def _compare_entry(entry: GoldenEntry, records, catalog, report) -> int:
    """Match golden rows of one polynomial; returns the number of matched rows."""
    W_gold = entry.poly
    _, perm = W_gold.canonical_with_permutation()
    matched = 0
    tag = entry.no
    sl = {r.sl_index for r in records}
    if sl != {entry.sl_index}:
        report.mismatches.append(f"{tag}: |SL/J| computed {sorted(sl)}, table {entry.sl_index}")
    if any(r.dual_polynomial_no != entry.dual for r in records):
        report.mismatches.append(f"{tag}: dual polynomial computed "
                                 f"{records[0].dual_polynomial_no}, table {entry.dual}")
    remaining = list(records)
    # rows pinned by explicit generators first
    for row in entry.rows:
        if row.generators is None:
            continue
        rec = _record_for_generators(entry, remaining, row.generators, perm)
        if rec is None:
            report.mismatches.append(f"{tag}: no computed group generated by {row.generators}")
            continue
        remaining.remove(rec)
        ok = (rec.index, rec.r, rec.a) == (row.index, row.r, row.a)
        if row.dual_generators is not None:
            ok &= _dual_matches(entry, rec, row.dual_generators, perm)
        if ok:
            matched += 1
        else:
            report.mismatches.append(f"{tag} <{row.generators}>: computed index {rec.index}, "
                                     f"(r,a)=({rec.r},{rec.a}); table {row.index}, ({row.r},{row.a})")
    for row in entry.rows:
        if row.generators is not None:
            continue
        rec = next((r for r in remaining if (r.index, r.r, r.a) == (row.index, row.r, row.a)), None)
        if rec is None:
            report.mismatches.append(f"{tag}: table row index {row.index}, (r,a)=({row.r},{row.a}) "
                                     "not reproduced")
            continue
        remaining.remove(rec)
        matched += 1
    for rec in remaining:
        report.mismatches.append(f"{tag}: extra computed row index {rec.index}, (r,a)=({rec.r},{rec.a})")
    return matched


def _record_for_generators(entry, records, literal, perm):
    W = entry.poly.canonical()
    target = group_from_literal(W, _map_generator(literal, perm))
    for rec in records:
        if group_from_literal(W, rec.group_generators) == target:
            return rec
    return None


def _dual_matches(entry, rec, dual_literal, perm) -> bool:
    W = entry.poly.canonical()
    G = group_from_literal(W, rec.group_generators)
    Gt = dual_group(G)
    expected = group_from_literal(W.transpose(), _map_generator(dual_literal, perm))
    return Gt == expected


def _check_duality(report: VerificationReport, catalog: Catalog):
    """Every record's dual must be a golden row with index |SL/G| and invariants (20-r, a)."""
    for rec in report.records:
        if not rec.mirror_check:
            report.mismatches.append(f"{rec.yonemura_no} index {rec.index}: dual invariants "
                                     f"({rec.dual_r},{rec.dual_a}) != ({20 - rec.r},{rec.a})")
        if rec.index * rec.dual_group_index != rec.sl_index:
            report.mismatches.append(f"{rec.yonemura_no} index {rec.index}: |G/J| |G^T/J^T| != |SL/J|")
        dual = catalog.by_no.get(rec.dual_polynomial_no or "")
        if dual is None:
            continue
        if not any((row.index, row.r, row.a) == (rec.dual_group_index, rec.dual_r, rec.dual_a)
                   for row in dual.rows):
            report.mismatches.append(f"{rec.yonemura_no} index {rec.index}: dual row "
                                     f"{dual.no} index {rec.dual_group_index} absent from table")


def _add_notes(report: VerificationReport):
    for rec in report.records:
        if rec.yonemura_no == "13d" and rec.index == 2:
            report.notes.append(
                f"13d at |G/J|=2: computed (g,n,k)=({rec.g},{rec.n},{rec.k}); "
                f"k=3 is forced by r={rec.r} and the classification row "
                f"({rec.r},{rec.a}), so k=4 cannot occur")
