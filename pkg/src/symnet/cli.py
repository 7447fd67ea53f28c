"""Command-line interface.

Subcommands: build (networks from a corpus manifest), symmetry
(per-node values for one network), analyze (histograms, logistic fit,
measurement correlations), features (books-by-words matrix CSV) and
classify (leave-one-out authorship attribution). All outputs are plain
CSV/JSON written atomically; identical inputs, flags and seed give
byte-identical files regardless of thread count.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import concentric, corpus, netstats, stylometry, wan

log = logging.getLogger("symnet")


def _configure_logging():
    level_name = os.environ.get("SYMNET_LOG", "WARNING").upper()
    level = getattr(logging, level_name, logging.WARNING)
    logging.basicConfig(format="%(levelname)s %(name)s: %(message)s")
    log.setLevel(level)


def _atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(value) -> str:
    if value is None:
        return ""
    return repr(float(value))


def _csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _preprocess_config(args) -> corpus.PreprocessConfig:
    stopwords = corpus.read_stopwords(args.stopwords) if args.stopwords else frozenset()
    lemma_map = corpus.read_lemma_map(args.lemmas) if args.lemmas else {}
    return corpus.PreprocessConfig(
        stopword_list=stopwords,
        lemma_map=lemma_map,
        cross_sentence_edges=args.cross_sentence,
    )


def _build_one(ref: corpus.BookRef, config: corpus.PreprocessConfig,
               pretagged: bool, out_dir: Path) -> dict:
    doc = corpus.load_document(ref, config, pretagged=pretagged)
    net = wan.build_wan(doc.tokens, config.cross_sentence_edges)
    for suffix, export in ((".edges.tsv", wan.export_edgelist), (".json", wan.export_json)):
        target = out_dir / f"{ref.id}{suffix}"
        staging = target.with_name(f".{target.name}.{os.getpid()}.tmp")
        try:
            export(net, staging)
            os.replace(staging, target)
        except BaseException:
            staging.unlink(missing_ok=True)
            raise
    return {
        "id": ref.id,
        "nodes": net.node_count,
        "edges": net.edge_count,
        "tokens": len(doc.tokens),
    }


def _document_network(ref: corpus.BookRef, config: corpus.PreprocessConfig,
                      pretagged: bool) -> tuple[str, str, wan.WordNetwork]:
    doc = corpus.load_document(ref, config, pretagged=pretagged)
    return ref.id, ref.author, wan.build_wan(doc.tokens, config.cross_sentence_edges)


def _build_networks(refs, config, pretagged, out_dir, threads):
    """Build every book's network, in manifest order, optionally in
    parallel; returns (summaries, failures)."""
    summaries = []
    failures = []
    if threads and threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_build_one, ref, config, pretagged, out_dir) for ref in refs]
            for ref, fut in zip(refs, futures):
                try:
                    summaries.append(fut.result())
                except Exception as exc:
                    failures.append((ref.id, exc))
    else:
        for ref in refs:
            try:
                summaries.append(_build_one(ref, config, pretagged, out_dir))
            except Exception as exc:
                failures.append((ref.id, exc))
    return summaries, failures


def cmd_build(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    refs = corpus.read_manifest(args.manifest)
    config = _preprocess_config(args)
    log.info("building %d networks into %s (threads=%s)", len(refs), out_dir, args.threads)
    summaries, failures = _build_networks(refs, config, args.pretagged, out_dir, args.threads)
    for s in summaries:
        print(f"{s['id']} {s['nodes']} {s['edges']} {s['tokens']}")
    for book_id, exc in failures:
        print(f"error: book {book_id}: {exc}", file=sys.stderr)
    return 1 if failures else 0


def _corpus_networks(args) -> tuple[list[str], list[str], list[wan.WordNetwork]]:
    """Per-book networks in manifest order, built in parallel when asked."""
    refs = corpus.read_manifest(args.manifest)
    config = _preprocess_config(args)
    if args.threads and args.threads > 1 and len(refs) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            futures = [
                pool.submit(_document_network, ref, config, args.pretagged) for ref in refs
            ]
            results = [f.result() for f in futures]
    else:
        results = [_document_network(ref, config, args.pretagged) for ref in refs]
    ids = [r[0] for r in results]
    authors = [r[1] for r in results]
    networks = [r[2] for r in results]
    return ids, authors, networks


def cmd_symmetry(args) -> int:
    net = wan.load_network(args.network)
    values = concentric.symmetry_all(net, args.h, args.kind, threads=args.threads)
    rows = []
    for i in range(net.node_count):
        rows.append((
            net.lemmas[i],
            net.degree(i),
            net.node_frequency[i],
            args.kind,
            args.h,
            _fmt(values[i].value),
        ))
    rows.sort()
    header = [("lemma", "degree", "frequency", "kind", "h", "symmetry")]
    out = Path(args.out) / f"symmetry_{args.kind}_h{args.h}.csv"
    _atomic_write(out, _csv_text(header + rows))
    print(out)
    return 0


def cmd_analyze(args) -> int:
    net = wan.load_network(args.network)
    out_dir = Path(args.out)
    written = []

    for kind in concentric.KINDS:
        values = concentric.symmetry_all(net, args.h, kind, threads=args.threads)
        defined = [v.value for v in values.values() if v.defined]
        hist = netstats.histogram(defined, args.bins)
        lines = ["bin_center,density"]
        lines += [
            f"{_fmt(c)},{_fmt(d)}" for c, d in zip(hist.bin_centers, hist.densities)
        ]
        path = out_dir / f"histogram_{kind}_h{args.h}.csv"
        _atomic_write(path, "\n".join(lines) + "\n")
        written.append(path)
        if kind == "merged":
            payload: dict
            try:
                fit = netstats.fit_logistic(hist, full_form=not args.reduced_fit)
                payload = fit.to_dict()
                print(f"merged h={args.h} logistic fit: R^2={fit.r_squared:.5f} "
                      f"chi^2={fit.chi_squared:.3e}")
            except ValueError as exc:
                payload = {"error": str(exc)}
                print(f"merged h={args.h} logistic fit skipped: {exc}")
            except netstats.FitConvergenceError as exc:
                payload = exc.fit.to_dict()
                payload["error"] = str(exc)
                print(f"merged h={args.h} logistic fit did not converge: {exc}")
            fit_path = out_dir / f"fit_merged_h{args.h}.json"
            _atomic_write(fit_path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
            written.append(fit_path)

    rows = netstats.symmetry_correlations(net, args.h, threads=args.threads)
    lines = ["measurement,kind,h,pearson_r"]
    lines += [f"{m},{k},{h},{_fmt(r)}" for m, k, h, r in rows]
    corr_path = out_dir / f"correlations_h{args.h}.csv"
    _atomic_write(corr_path, "\n".join(lines) + "\n")
    written.append(corr_path)
    for path in written:
        print(path)
    return 0


def _parse_levels(args) -> list[int]:
    if args.levels:
        levels = sorted({int(part) for part in args.levels.split(",")})
        if any(h < 1 for h in levels):
            raise SystemExit("--levels entries must be >= 1")
        return levels
    return [args.h]


def _feature_matrix(args) -> stylometry.FeatureMatrix:
    book_ids, authors, networks = _corpus_networks(args)
    levels = _parse_levels(args)
    matrices = [
        stylometry.build_features(networks, book_ids, authors, args.kind, h,
                                  threads=args.threads)
        for h in levels
    ]
    return stylometry.combine_features(matrices, suffixes=[f"h{h}" for h in levels])


def cmd_features(args) -> int:
    features = _feature_matrix(args)
    rows = [["book_id", "author", *features.columns]]
    for i, (book, author) in enumerate(zip(features.book_ids, features.authors)):
        rows.append([book, author, *(_fmt(v) for v in features.values[i])])
    out = Path(args.out) / "features.csv"
    _atomic_write(out, _csv_text(rows))
    print(out)
    return 0


def cmd_classify(args) -> int:
    features = _feature_matrix(args)
    params = {}
    if args.classifier == "knn":
        params["k"] = args.knn_k
    elif args.classifier == "svm":
        params = {"c": args.svm_c, "epochs": args.svm_epochs}
    elif args.classifier == "mlp":
        params = {"hidden": args.mlp_hidden, "lr": args.mlp_lr, "epochs": args.mlp_epochs}
    spec = stylometry.ClassifierSpec(args.classifier, params, seed=args.seed)
    report = stylometry.loocv(spec, features)
    payload = report.to_dict()
    payload["kind"] = args.kind
    payload["levels"] = _parse_levels(args)
    out = Path(args.out) / "report.json"
    _atomic_write(out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"accuracy {report.accuracy:.4f} p_value {report.p_value:.3e}")
    print(out)
    return 0


def _positive_int(value: str) -> int:
    parsed = int(value)
    if parsed < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return parsed


def _add_corpus_options(p: argparse.ArgumentParser):
    p.add_argument("manifest", help="corpus manifest CSV (id,author,title,path)")
    p.add_argument("--stopwords", metavar="PATH", help="stopword list, one per line")
    p.add_argument("--lemmas", metavar="PATH", help="surface<TAB>lemma map")
    p.add_argument("--cross-sentence", action="store_true",
                   help="link adjacent words across sentence boundaries")
    p.add_argument("--pretagged", action="store_true",
                   help="book files are pre-lemmatized (surface<TAB>lemma per line)")


def _add_common(p: argparse.ArgumentParser, with_kind=True):
    if with_kind:
        p.add_argument("--kind", choices=concentric.KINDS, default="merged")
    p.add_argument("--h", type=_positive_int, default=2, help="concentric level (>= 1)")
    p.add_argument("--out", default=".", metavar="DIR", help="output directory")
    p.add_argument("--threads", type=_positive_int, default=os.cpu_count(),
                   help="parallelism cap (default: all cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symnet",
        description="Word adjacency networks, concentric symmetry and authorship attribution.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build one network per manifest book")
    _add_corpus_options(p)
    p.add_argument("--out", default=".", metavar="DIR")
    p.add_argument("--threads", type=_positive_int, default=os.cpu_count())
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("symmetry", help="per-node symmetry CSV for one network")
    p.add_argument("network", help="network file (.json or .edges.tsv)")
    _add_common(p)
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("analyze", help="histograms, logistic fit and correlations")
    p.add_argument("network", help="network file (.json or .edges.tsv)")
    _add_common(p, with_kind=False)
    p.add_argument("--bins", type=_positive_int, default=30)
    p.add_argument("--reduced-fit", action="store_true",
                   help="fit the single-amplitude logistic form")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("features", help="books-by-shared-words feature CSV")
    _add_corpus_options(p)
    _add_common(p)
    p.add_argument("--levels", help="comma-separated levels to concatenate, e.g. 2,3,4")
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("classify", help="leave-one-out authorship attribution")
    _add_corpus_options(p)
    _add_common(p)
    p.add_argument("--levels", help="comma-separated levels to concatenate, e.g. 2,3,4")
    p.add_argument("--classifier", choices=stylometry.CLASSIFIER_KINDS, default="svm")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--knn-k", type=_positive_int, default=1)
    p.add_argument("--svm-c", type=float, default=1.0)
    p.add_argument("--svm-epochs", type=_positive_int, default=200)
    p.add_argument("--mlp-hidden", type=_positive_int, default=20)
    p.add_argument("--mlp-lr", type=float, default=0.01)
    p.add_argument("--mlp-epochs", type=_positive_int, default=500)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
