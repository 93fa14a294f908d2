"""Command line driver: deterministic class tables and golden-fixture checks.

    twisted-levis tori --group Sp4 --format text
    twisted-levis finite-gen --group G2 --char 3
    twisted-levis --check [--fixtures DIR]
"""

from __future__ import annotations

import argparse
import csv
import difflib
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .affine import DEFAULT_RADIUS
from .catalog import GroupSpec, UnknownPreset, resolve
from .finite import cartan_type, enumerate_IG, enumerate_IGprime
from .genlevi import GenEngine
from .root_system import normalize_char
from .stable import StableEngine, embedding_table
from .tori import engine

MODES = ("finite", "finite-gen", "tori", "maximal-tori", "stable", "embeddings", "genlevi", "contains")
CHAR_MODES = {"finite-gen", "genlevi", "contains"}
RADIUS_MODES = {"tori", "maximal-tori", "embeddings", "genlevi", "contains"}
FIXTURE_DIR = Path(__file__).parent / "fixtures"

EXIT_UNKNOWN_PRESET = 1
EXIT_BAD_FLAGS = 2
EXIT_FIXTURE_MISMATCH = 3


@dataclass(frozen=True)
class RunConfig:
    group: str
    mode: str
    char: str | None = None
    format: str = "text"
    radius: int = DEFAULT_RADIUS


class FlagError(ValueError):
    pass


def _theta(rs, theta) -> str:
    return "{" + ",".join(rs.name(i) for i in theta) + "}"


def _rows(spec: GroupSpec, cfg: RunConfig) -> tuple[list[str], list[list]]:
    apt = spec.apartment
    W, rs = apt.W, apt.rs
    mode = cfg.mode
    if mode in ("finite", "finite-gen"):
        recs = enumerate_IG(spec) if mode == "finite" else enumerate_IGprime(spec)
        cols = ["index", "theta", "w", "orbit_size", "type", "twist_order_theta", "twist_order", "charpoly"]
        generic = set()
        if mode == "finite-gen":
            cols += ["generalized", "conditions"]
            generic = {(r.theta, r.w) for r in enumerate_IGprime(spec.with_char(0))}
        rows = []
        for k, r in enumerate(recs):
            d = r.descriptor
            row = [k, _theta(rs, r.theta), W.word_str(r.w), r.orbit_size, d.cartan_type,
                   d.twist_order_theta, d.twist_order, " ".join(map(str, d.charpoly))]
            if mode == "finite-gen":
                cond = "-" if not r.generalized else "none" if (r.theta, r.w) in generic else f"char={spec.residue_char}"
                row += [r.generalized, cond]
            rows.append(row)
        return cols, rows
    if mode in ("tori", "maximal-tori"):
        E = engine(spec, cfg.radius)
        cols = ["index", "facet", "facet_class", "fixed_dim", "theta", "w", "elliptic", "alcove_triples"]
        rows = [
            [k, c.facet.label(), c.facet_class, c.facet.fr_fixed_dim, _theta(rs, c.theta), W.word_str(c.w), True, len(c.triples)]
            for k, c in enumerate(E.classes)
            if mode == "tori" or not c.members
        ]
        return cols, rows
    if mode == "stable":
        cols = ["id", "theta", "w", "size"]
        return cols, [[c.id, _theta(rs, c.theta), W.word_str(c.w), c.size] for c in StableEngine(spec).classes]
    if mode == "embeddings":
        cols = ["index", "facet", "theta", "w", "stable_id", "count", "twisted_order", "w_f_theta_w", "w_theta"]
        rows = [
            [r.klass, r.facet.label(), _theta(rs, r.theta), W.word_str(r.w), r.stable_id, r.count.count,
             r.count.twisted, r.count.w_f_theta_w, r.count.w_theta]
            for r in embedding_table(spec, cfg.radius)
        ]
        return cols, rows
    if mode == "genlevi":
        G = GenEngine(spec, radius=cfg.radius)
        cols = ["index", "facet", "facet_class", "theta", "w", "type", "generalized"]
        rows = [
            [k, c.facet.label(), c.facet_class, _theta(rs, c.theta), W.word_str(c.w), cartan_type(rs, c.members), G.is_generalized(c)]
            for k, c in enumerate(G.classes)
        ]
        return cols, rows
    if mode == "contains":
        G = GenEngine(spec, radius=cfg.radius)
        cols = ["sub", "sup"]
        return cols, [[a, b] for a, b in G.containment if a != b]
    raise FlagError(f"unknown mode {mode!r}")


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render(spec: GroupSpec, cfg: RunConfig) -> str:
    cols, rows = _rows(spec, cfg)
    header = f"twisted-levis {__version__} mode={cfg.mode} group={spec.name} char={spec.residue_char}"
    if cfg.format == "json":
        doc = {
            "version": __version__,
            "mode": cfg.mode,
            "group": spec.name,
            "char": spec.residue_char,
            "columns": cols,
            "rows": [dict(zip(cols, r)) for r in rows],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["# " + header])
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(v) for v in r])
        return buf.getvalue()
    table = [cols] + [[_cell(v) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(cols))]
    lines = ["# " + header]
    for r in table:
        lines.append("  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def run(cfg: RunConfig) -> tuple[int, str]:
    try:
        spec = resolve(cfg.group)
    except (UnknownPreset, FileNotFoundError) as exc:
        return EXIT_UNKNOWN_PRESET, f"unknown group: {exc}\n"
    if cfg.char is not None:
        spec = spec.with_char(cfg.char)
    return 0, render(spec, cfg)


def check_fixtures(fixture_dir: Path | str = FIXTURE_DIR, only_mode: str | None = None,
                   only_group: str | None = None, out=sys.stdout) -> int:
    fixture_dir = Path(fixture_dir)
    manifest = fixture_dir / "manifest.json"
    if not manifest.exists():
        print(f"missing fixture manifest: {manifest}", file=out)
        return EXIT_FIXTURE_MISMATCH
    entries = json.loads(manifest.read_text()).get("entries", [])
    status = 0
    for e in entries:
        args = e["args"]
        if only_mode and args[0] != only_mode:
            continue
        if only_group and only_group not in args:
            continue
        path = fixture_dir / e["file"]
        if not path.exists():
            print(f"MISSING {e['name']}: {path}", file=out)
            status = EXIT_FIXTURE_MISMATCH
            continue
        code, text = run(_config(_parser().parse_args(args)))
        with open(path, encoding="utf-8", newline="") as fh:
            expected = fh.read()
        if code == 0 and text == expected:
            print(f"ok      {e['name']}", file=out)
            continue
        status = EXIT_FIXTURE_MISMATCH
        print(f"DIFF    {e['name']}", file=out)
        out.writelines(difflib.unified_diff(
            expected.splitlines(keepends=True), text.splitlines(keepends=True), str(path), "regenerated"))
    return status


def update_fixtures(fixture_dir: Path | str = FIXTURE_DIR) -> None:
    fixture_dir = Path(fixture_dir)
    for e in json.loads((fixture_dir / "manifest.json").read_text())["entries"]:
        code, text = run(_config(_parser().parse_args(e["args"])))
        assert code == 0, e
        (fixture_dir / e["file"]).write_text(text, encoding="utf-8", newline="")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twisted-levis", description=__doc__.split("\n")[0])
    p.add_argument("mode", nargs="?", choices=MODES)
    p.add_argument("--group", help="preset name (Sp4, G2, SL3, SU3q, A1, SL1D(n), SLn) or key=value config file")
    p.add_argument("--char", help="residue characteristic: zero, 2, 3, ...")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--radius", type=int, help=f"affine search bound (default {DEFAULT_RADIUS})")
    p.add_argument("--check", action="store_true", help="regenerate fixture tables and byte-compare")
    p.add_argument("--fixtures", help="fixture directory (default: the shipped fixtures)")
    p.add_argument("--update-fixtures", action="store_true", help=argparse.SUPPRESS)
    return p


def _config(ns: argparse.Namespace) -> RunConfig:
    if ns.mode is None:
        raise FlagError("a mode is required unless --check is given")
    if not ns.group:
        raise FlagError("--group is required")
    if ns.char is not None:
        if ns.mode not in CHAR_MODES:
            raise FlagError(f"--char is meaningless for mode {ns.mode}")
        try:
            normalize_char(ns.char)
        except ValueError:
            raise FlagError(f"bad characteristic {ns.char!r}") from None
    if ns.radius is not None:
        if ns.mode not in RADIUS_MODES:
            raise FlagError(f"--radius is meaningless for mode {ns.mode}")
        if ns.radius < 2:
            raise FlagError("--radius must be at least 2")
    return RunConfig(ns.group, ns.mode, ns.char, ns.format, ns.radius if ns.radius is not None else DEFAULT_RADIUS)


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    ns = parser.parse_args(argv)
    if ns.update_fixtures:
        update_fixtures(ns.fixtures or FIXTURE_DIR)
        return 0
    if ns.check:
        if ns.char is not None or ns.radius is not None:
            parser.print_usage(sys.stderr)
            print("twisted-levis: --check takes only --fixtures, a mode and --group", file=sys.stderr)
            return EXIT_BAD_FLAGS
        return check_fixtures(ns.fixtures or FIXTURE_DIR, ns.mode, ns.group)
    if ns.fixtures:
        print("twisted-levis: --fixtures needs --check", file=sys.stderr)
        return EXIT_BAD_FLAGS
    try:
        cfg = _config(ns)
    except FlagError as exc:
        parser.print_usage(sys.stderr)
        print(f"twisted-levis: error: {exc}", file=sys.stderr)
        return EXIT_BAD_FLAGS
    code, text = run(cfg)
    (sys.stdout if code == 0 else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
