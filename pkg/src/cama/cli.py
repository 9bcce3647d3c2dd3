"""``cama`` command line.

Every run writes ``<output-dir>/<command>.config.json`` holding the fully
resolved options.  Paths in it are relative to the sidecar's directory, so
``cama <command> --config out/<command>.config.json`` reproduces the run.

Exit codes: 0 success, 1 invalid data or options, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from collections import Counter
from pathlib import Path
from typing import IO, Sequence

from .corpus import Corpus, CorpusError, load_corpus, save_corpus
from .datagen import GenConfig, generate
from .evaluate import Evaluation, EvalRow, SweepSpec, plot_series, sweep, write_report
from .graph import build_graph
from .rwr import WalkConfig, rank_songs, rwr_rank
from .targets import Thresholds, score_all
from .transition import build_transition

logger = logging.getLogger("cama")

PLAYLISTS_FILE = "playlists.jsonl"
SONGS_FILE = "songs.jsonl"
PATH_OPTIONS = ("output_dir", "playlists", "songs", "dump_tp", "report")
SIDECAR_NOTES = ("averaging",)


class UsageError(Exception):
    pass


def _common(add_corpus: bool = True) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=42, help="RNG seed (default 42)")
    p.add_argument("--output-dir", default="out", help="directory for data files and config sidecars")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--config", help="JSON sidecar from an earlier run; flags given here override it")
    p.add_argument("-v", "--verbose", action="store_true")
    if add_corpus:
        p.add_argument("--playlists", help=f"playlists file (default <output-dir>/{PLAYLISTS_FILE})")
        p.add_argument("--songs", help=f"songs file (default <output-dir>/{SONGS_FILE})")
    return p


def _walk_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=0.8, help="walk probability; restart is 1 - alpha")
    p.add_argument("--max-step", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-10, help="L1 early-exit tolerance, 0 disables")


def _threshold_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t1", type=float, default=0.4, help="cama1 threshold (strict)")
    p.add_argument("--t2", type=float, default=0.5, help="cama2 threshold (strict)")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="cama", description="Common-artist music recommendation.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    subs = {}

    p = sub.add_parser("generate", parents=[_common(add_corpus=False)], help="write a synthetic corpus")
    p.add_argument("--n-listeners", type=int, default=100)
    p.add_argument("--n-songs", type=int, default=50)
    p.add_argument("--n-artists", type=int, default=20)
    p.add_argument("--playlist-len", type=int, nargs=2, default=[11, 19], metavar=("MIN", "MAX"))
    p.add_argument("--artists-per-song", type=int, nargs=2, default=[2, 4], metavar=("MIN", "MAX"))
    p.add_argument("--popularity-sigma", type=float, help="default n_songs / 4")
    p.add_argument("--artist-sigma", type=float, help="default n_artists / 4")
    subs["generate"] = p

    p = sub.add_parser("select-targets", parents=[_common()], help="print cama scores per listener")
    _threshold_flags(p)
    subs["select-targets"] = p

    p = sub.add_parser("build-graph", parents=[_common()], help="graph statistics and transition dump")
    p.add_argument("--stats", action="store_true", help="print node/edge counts and degree histogram")
    p.add_argument("--dump-tp", help="write (row, col, prob) triples to this CSV file")
    subs["build-graph"] = p

    p = sub.add_parser("recommend", parents=[_common()], help="rank unheard songs for one listener")
    p.add_argument("--listener", help="listener string id (required)")
    p.add_argument("--top-n", type=int, default=5)
    _walk_flags(p)
    subs["recommend"] = p

    p = sub.add_parser("evaluate", parents=[_common()], help="holdout precision/recall/F1")
    p.add_argument("--top-n", type=int, default=5)
    _walk_flags(p)
    _threshold_flags(p)
    subs["evaluate"] = p

    p = sub.add_parser("sweep", parents=[_common()], help="one-at-a-time hyperparameter sweep")
    defaults = SweepSpec()
    p.add_argument("--alphas", type=float, nargs="+", default=list(defaults.alphas))
    p.add_argument("--t1s", type=float, nargs="+", default=list(defaults.t1s))
    p.add_argument("--t2s", type=float, nargs="+", default=list(defaults.t2s))
    p.add_argument("--ns", type=int, nargs="+", default=list(defaults.ns))
    p.add_argument("--plots", action="store_true", help="also write plots/ series tables")
    _walk_flags(p)
    _threshold_flags(p)
    subs["sweep"] = p

    p = sub.add_parser("plots", parents=[_common(add_corpus=False)], help="metric-vs-N tables from a sweep report")
    p.add_argument("--report", help="sweep CSV (default <output-dir>/sweep.csv)")
    subs["plots"] = p
    return parser, subs


def _parse(argv: Sequence[str]) -> argparse.Namespace:
    parser, subs = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        config_path = Path(args.config)
        try:
            saved = json.loads(config_path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {config_path}: {exc}") from None
        if saved.pop("command", args.command) != args.command:
            raise UsageError(f"config {config_path} is for a different command")
        for key in SIDECAR_NOTES:
            saved.pop(key, None)
        base = config_path.parent
        known = {a.dest for a in subs[args.command]._actions}
        unknown = sorted(set(saved) - known)
        if unknown:
            raise UsageError(f"config {config_path} has unknown options {unknown}")
        for key in PATH_OPTIONS:
            if saved.get(key) is not None:
                saved[key] = str(base / saved[key])
        subs[args.command].set_defaults(**saved)
        args = parser.parse_args(argv)
    if args.command == "recommend" and args.listener is None:
        subs["recommend"].error("the following arguments are required: --listener")
    if getattr(args, "playlists", "unset") is None:
        args.playlists = str(Path(args.output_dir) / PLAYLISTS_FILE)
    if getattr(args, "songs", "unset") is None:
        args.songs = str(Path(args.output_dir) / SONGS_FILE)
    if getattr(args, "report", "unset") is None:
        args.report = str(Path(args.output_dir) / "sweep.csv")
    return args


def _write_sidecar(args: argparse.Namespace, extra: dict | None = None) -> None:
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    resolved = {k: v for k, v in sorted(vars(args).items()) if k not in ("config", "verbose")}
    for key in PATH_OPTIONS:
        if resolved.get(key) is not None:
            resolved[key] = Path(os.path.relpath(resolved[key], out)).as_posix()
    resolved.update(extra or {})
    text = json.dumps(resolved, indent=2, sort_keys=True) + "\n"
    (out / f"{args.command}.config.json").write_text(text, encoding="utf-8")


def _load(args: argparse.Namespace) -> Corpus:
    return load_corpus(args.playlists, args.songs)


def _emit(rows: list[dict], columns: Sequence[str], fmt: str, out: IO[str]) -> None:
    if fmt == "json":
        for row in rows:
            out.write(json.dumps(row) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow(["" if row[c] is None else repr(row[c]) if isinstance(row[c], float) else row[c] for c in columns])


def cmd_generate(args: argparse.Namespace) -> None:
    config = GenConfig(
        seed=args.seed,
        n_listeners=args.n_listeners,
        n_songs=args.n_songs,
        n_artists=args.n_artists,
        playlist_len_range=tuple(args.playlist_len),
        artists_per_song_range=tuple(args.artists_per_song),
        popularity_sigma=args.popularity_sigma,
        artist_sigma=args.artist_sigma,
    )
    corpus = generate(config)
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_corpus(corpus, out / PLAYLISTS_FILE, out / SONGS_FILE)
    args.popularity_sigma = config.song_sigma
    args.artist_sigma = config.artist_weight_sigma
    _write_sidecar(args)
    print(f"seed={config.seed} listeners={corpus.n} songs={corpus.m} artists={corpus.a} -> {out}", file=sys.stderr)


def cmd_select_targets(args: argparse.Namespace) -> None:
    corpus = _load(args)
    thresholds = Thresholds(args.t1, args.t2)
    rows = []
    for l, scores in enumerate(score_all(corpus)):
        rows.append(
            {
                "listener": corpus.listener_ids[l],
                "cama1": None if scores is None else scores.cama1,
                "cama2": None if scores is None else scores.cama2,
                "selected": scores is not None and thresholds.admits(scores),
            }
        )
    _write_sidecar(args)
    _emit(rows, ("listener", "cama1", "cama2", "selected"), args.format, sys.stdout)


def cmd_build_graph(args: argparse.Namespace) -> None:
    corpus = _load(args)
    graph = build_graph(corpus)
    _write_sidecar(args)
    if args.dump_tp:
        build_transition(graph).dump_csv(args.dump_tp)
        logger.info("wrote %s", args.dump_tp)
    if args.stats or not args.dump_tp:
        rows = [
            {"section": "counts", "key": "listener_nodes", "value": graph.n},
            {"section": "counts", "key": "song_nodes", "value": graph.m},
            {"section": "counts", "key": "ls_edges", "value": len(graph.ls_edges)},
            {"section": "counts", "key": "ss_edges", "value": len(graph.ss_edges)},
        ]
        hist = Counter(graph.degrees().tolist())
        rows += [{"section": "degree_histogram", "key": d, "value": hist[d]} for d in sorted(hist)]
        _emit(rows, ("section", "key", "value"), args.format, sys.stdout)


def _walk(args: argparse.Namespace) -> WalkConfig:
    return WalkConfig(alpha=args.alpha, maximum_step=args.max_step, convergence_tol=args.tol)


def cmd_recommend(args: argparse.Namespace) -> None:
    corpus = _load(args)
    listener = corpus.listener_index(args.listener)
    tp = build_transition(build_graph(corpus))
    scores = rwr_rank(tp, listener, _walk(args))
    ranked = rank_songs(scores, corpus.n, corpus.playlists[listener], args.top_n)
    _write_sidecar(args)
    rows = [{"rank": i, "song": corpus.song_ids[s], "score": score} for i, (s, score) in enumerate(ranked, 1)]
    _emit(rows, ("rank", "song", "score"), args.format, sys.stdout)


def _write_rows(args: argparse.Namespace, name: str, rows: list[EvalRow]) -> Path:
    suffix = "jsonl" if args.format == "json" else "csv"
    path = Path(args.output_dir) / f"{name}.{suffix}"
    with open(path, "w", encoding="utf-8", newline="") as f:
        write_report(rows, f, args.format)
    logger.info("wrote %s (%d rows)", path, len(rows))
    return path


def cmd_evaluate(args: argparse.Namespace) -> None:
    corpus = _load(args)
    ev = Evaluation(corpus, args.seed)
    row = ev.row("base", Thresholds(args.t1, args.t2), _walk(args), args.top_n)
    _write_sidecar(args, {"averaging": "macro"})
    _write_rows(args, "evaluate", [row])


def _write_plots(out_dir: Path, rows: list[EvalRow]) -> None:
    plots = out_dir / "plots"
    plots.mkdir(parents=True, exist_ok=True)
    for name, table in plot_series(rows).items():
        with open(plots / f"{name}.csv", "w", encoding="utf-8", newline="") as f:
            csv.writer(f, lineterminator="\n").writerows(table)


def cmd_sweep(args: argparse.Namespace) -> None:
    corpus = _load(args)
    spec = SweepSpec(alphas=args.alphas, t1s=args.t1s, t2s=args.t2s, ns=args.ns)
    rows = sweep(corpus, spec, seed=args.seed, thresholds=Thresholds(args.t1, args.t2), walk=_walk(args))
    _write_sidecar(args, {"averaging": "macro"})
    _write_rows(args, "sweep", rows)
    if args.plots:
        _write_plots(Path(args.output_dir), rows)


def _read_report(path: str) -> list[EvalRow]:
    def num(text: str, kind=float):
        return None if text == "" else kind(text)

    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        return [
            EvalRow(
                label=r["label"],
                alpha=float(r["alpha"]),
                t1=float(r["t1"]),
                t2=float(r["t2"]),
                n=int(r["n"]),
                precision=num(r["precision"]),
                recall=num(r["recall"]),
                f1=num(r["f1"]),
                n_target_listeners=int(r["n_target_listeners"]),
            )
            for r in reader
        ]


def cmd_plots(args: argparse.Namespace) -> None:
    try:
        rows = _read_report(args.report)
    except (KeyError, ValueError) as exc:
        raise CorpusError(f"{args.report}: not a sweep CSV report ({exc})") from None
    _write_sidecar(args)
    _write_plots(Path(args.output_dir), rows)


COMMANDS = {
    "generate": cmd_generate,
    "select-targets": cmd_select_targets,
    "build-graph": cmd_build_graph,
    "recommend": cmd_recommend,
    "evaluate": cmd_evaluate,
    "sweep": cmd_sweep,
    "plots": cmd_plots,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _parse(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"cama: error: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        COMMANDS[args.command](args)
    except (CorpusError, ValueError, OSError) as exc:
        print(f"cama {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
