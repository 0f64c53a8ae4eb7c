"""Command-line front end.

Subcommands: torsion-stats, modp-rank, heegaard, lyapunov, prescribe,
punctured, snf.  Each experiment writes a CSV of per-sample records and
a JSON manifest echoing the full configuration; re-running with a
manifest's config reproduces the CSV byte-for-byte (the timestamp is the
only field that changes).

Exit codes: 0 success, 2 config error, 3 I/O error, 4 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import os
import sys

from . import __version__
from .generators import POSITIVE, SYMMETRIC, make_family
from .homology import (DivisorChain, complexity_lower_bound, fp_rank,
                       heegaard_homology, mapping_torus_homology,
                       smith_normal_form, torsion_order)
from .intmat import IntMatrix, NotPrimeError, identity, is_prime
from .lyapunov import clt_diagnostics, estimate_exponents
from .prescribe import prescribe_symplectic, verify_prescription
from .punctured import run_scaling_experiment
from .stats import empirical_rank_table, exhaustive_sp2_oracle, linear_fit, summarize
from .walker import BatchConfig, run_batch


class ConfigError(ValueError):
    pass


def fmt(x: float) -> str:
    """Round-trippable decimal rendering of a float."""
    return format(float(x), ".17g")


def parse_lengths(text: str):
    try:
        parts = [int(p) for p in text.split(":")]
    except ValueError:
        raise ConfigError("bad lengths spec %r (want start:end:step)" % text)
    if len(parts) == 1:
        return (parts[0], parts[0], 1)
    if len(parts) == 2:
        return (parts[0], parts[1], 1)
    if len(parts) == 3:
        return tuple(parts)
    raise ConfigError("bad lengths spec %r" % text)


def threads_from_env() -> int:
    raw = os.environ.get("THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError("THREADS must be an integer")
    return max(1, n)


# --- per-sample record callbacks (module level: picklable) ------------------

def _torsion_record(sample):
    m = sample.product
    t = torsion_order(m)
    if t.singular:
        h = mapping_torus_homology(m)
        betti = h.betti
    else:
        betti = 1
    return (sample.word.length, math.log(t.value) if t.value > 1 else 0.0,
            betti, t.singular)


class _ModpRecord:
    def __init__(self, primes):
        self.primes = tuple(primes)

    def __call__(self, sample):
        return (sample.word.length,
                tuple(fp_rank(sample.product, p) for p in self.primes))


class _HeegaardRecord:
    def __init__(self, genus):
        self.genus = genus

    def __call__(self, sample):
        h = heegaard_homology(sample.product, self.genus)
        t = h.torsion_order
        return (sample.word.length, math.log(t) if t > 1 else 0.0,
                h.betti, complexity_lower_bound(h))


# --- manifest / file plumbing ------------------------------------------------

def _manifest(command, config, extra):
    doc = {
        "artifact": "symwalk",
        "version": __version__,
        "command": command,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "config": config,
    }
    doc.update(extra)
    return doc


def _write_outputs(out_dir, stem, csv_text, manifest, records_json=None,
                   fmt_kind="csv"):
    os.makedirs(out_dir, exist_ok=True)
    if fmt_kind == "csv":
        data_path = os.path.join(out_dir, stem + ".csv")
        with open(data_path, "w") as fh:
            fh.write(csv_text)
    else:
        data_path = os.path.join(out_dir, stem + ".json")
        with open(data_path, "w") as fh:
            json.dump(records_json, fh, indent=2)
            fh.write("\n")
    manifest_path = os.path.join(out_dir, stem + "_manifest.json")
    with open(manifest_path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return data_path, manifest_path


def _summaries_by_length(rows, value_index):
    by_len = {}
    for row in rows:
        by_len.setdefault(row[0], []).append(row[value_index])
    out = {}
    for length in sorted(by_len):
        s = summarize(by_len[length])
        out[str(length)] = {"count": s.count, "mean": s.mean,
                            "variance": s.variance}
    return out


def _mean_fit(summaries):
    if len(summaries) < 2:
        return None
    xs = [int(k) for k in summaries]
    ys = [summaries[k]["mean"] for k in summaries]
    f = linear_fit(xs, ys)
    return {"slope": f.slope, "intercept": f.intercept, "r_squared": f.r_squared}


# --- subcommands --------------------------------------------------------------

def _batch_config(cfg) -> BatchConfig:
    try:
        return BatchConfig(
            family_name=cfg["family"],
            family_param=int(cfg["param"]),
            lengths=tuple(cfg["lengths"]),
            samples_per_length=int(cfg["samples"]),
            master_seed=int(cfg["seed"]),
            mode=cfg.get("mode", POSITIVE),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError("invalid batch config: %s" % exc)


def cmd_torsion_stats(cfg, out_dir, fmt_kind="csv"):
    batch = _batch_config(cfg)
    rows = list(run_batch_indexed(batch, _torsion_record))
    lines = ["length,sample_index,log_torsion,betti,singular"]
    for (length, idx), (length_, log_t, betti, singular) in rows:
        lines.append("%d,%d,%s,%d,%d" % (length, idx, fmt(log_t), betti,
                                         int(singular)))
    csv_text = "\n".join(lines) + "\n"
    summaries = _summaries_by_length(
        [(length, None, log_t) for (length, _), (_, log_t, _, _) in rows], 2)
    manifest = _manifest("torsion-stats", cfg,
                         {"per_length": summaries, "fit": _mean_fit(summaries)})
    records = [{"length": length, "sample_index": idx, "log_torsion": log_t,
                "betti": betti, "singular": singular}
               for (length, idx), (_, log_t, betti, singular) in rows]
    return _write_outputs(out_dir, "torsion_stats", csv_text, manifest,
                          records, fmt_kind)


def run_batch_indexed(batch: BatchConfig, per_sample):
    """run_batch plus the (length, sample_index) key for each record."""
    keys = [(length, j) for length in batch.length_values()
            for j in range(batch.samples_per_length)]
    return zip(keys, run_batch(batch, per_sample, threads=threads_from_env()))


def cmd_modp_rank(cfg, out_dir, fmt_kind="csv"):
    primes = [int(p) for p in cfg.get("primes", [])]
    if not primes:
        raise ConfigError("modp-rank needs at least one prime")
    for p in primes:
        if not is_prime(p):
            raise ConfigError("%d is not prime" % p)
    batch = _batch_config(cfg)
    rows = list(run_batch_indexed(batch, _ModpRecord(primes)))
    lines = ["length,sample_index,p,fp_rank"]
    for (length, idx), (_, ranks) in rows:
        for p, r in zip(primes, ranks):
            lines.append("%d,%d,%d,%d" % (length, idx, p, r))
    csv_text = "\n".join(lines) + "\n"

    # empirical distribution at the largest length, with the exact oracle
    # alongside when the group is small enough to enumerate
    top = max(batch.length_values())
    fam_dim = make_family(batch.family_name, batch.family_param).dim
    g = fam_dim // 2
    tables = {}
    for i, p in enumerate(primes):
        ranks = [r[1][i] for (length, _), r in rows if length == top]
        predicted = {}
        try:
            predicted = {str(k): float(v)
                         for k, v in exhaustive_sp2_oracle(p, g).items()}
        except (ValueError, NotPrimeError):
            predicted = {}
        table = empirical_rank_table(p, ranks)
        entry = {"empirical": {str(k): v for k, v in table.frequencies.items()},
                 "predicted": predicted}
        if predicted:
            keys = set(entry["empirical"]) | set(predicted)
            entry["total_variation"] = 0.5 * sum(
                abs(entry["empirical"].get(k, 0.0) - predicted.get(k, 0.0))
                for k in keys)
        tables[str(p)] = entry
    manifest = _manifest("modp-rank", cfg,
                         {"rank_tables_at_length": top, "rank_tables": tables})
    records = [{"length": length, "sample_index": idx, "p": p, "fp_rank": r}
               for (length, idx), (_, ranks) in rows
               for p, r in zip(primes, ranks)]
    return _write_outputs(out_dir, "modp_rank", csv_text, manifest,
                          records, fmt_kind)


def cmd_heegaard(cfg, out_dir, fmt_kind="csv"):
    batch = _batch_config(cfg)
    fam = make_family(batch.family_name, batch.family_param)
    if fam.form != "J":
        raise ConfigError("heegaard needs a symplectic family")
    g = fam.dim // 2
    rows = list(run_batch_indexed(batch, _HeegaardRecord(g)))
    lines = ["length,sample_index,log_h1,betti,complexity_lower_bound"]
    for (length, idx), (_, log_h1, betti, comp) in rows:
        lines.append("%d,%d,%s,%d,%s" % (length, idx, fmt(log_h1), betti,
                                         fmt(comp)))
    csv_text = "\n".join(lines) + "\n"
    summaries = _summaries_by_length(
        [(length, None, log_h1) for (length, _), (_, log_h1, _, _) in rows], 2)
    top = max(batch.length_values())
    top_samples = [log_h1 for (length, _), (_, log_h1, _, _) in rows
                   if length == top]
    diagnostics = None
    if len(top_samples) >= 30:
        d = clt_diagnostics(top_samples)
        diagnostics = {"mean": d.mean, "variance": d.variance,
                       "skewness": d.skewness,
                       "excess_kurtosis": d.excess_kurtosis,
                       "ks_statistic_vs_normal": d.ks_statistic_vs_normal}
    manifest = _manifest("heegaard", cfg, {
        "genus": g,
        "per_length": summaries,
        "fit": _mean_fit(summaries),
        "clt_diagnostics_at_length": top,
        "clt_diagnostics": diagnostics,
    })
    records = [{"length": length, "sample_index": idx, "log_h1": log_h1,
                "betti": betti, "complexity_lower_bound": comp}
               for (length, idx), (_, log_h1, betti, comp) in rows]
    return _write_outputs(out_dir, "heegaard", csv_text, manifest,
                          records, fmt_kind)


def cmd_lyapunov(cfg, out_dir, fmt_kind="csv"):
    try:
        fam = make_family(cfg["family"], int(cfg["param"]))
        steps = int(cfg.get("steps", 2000))
        trials = int(cfg.get("trials", 100))
        seed = int(cfg["seed"])
    except (KeyError, ValueError) as exc:
        raise ConfigError("invalid lyapunov config: %s" % exc)
    est = estimate_exponents(fam, steps, trials, seed)
    lines = ["exponent_index,value,standard_error"]
    for i, (e, se) in enumerate(zip(est.exponents, est.standard_error)):
        lines.append("%d,%s,%s" % (i, fmt(e), fmt(se)))
    csv_text = "\n".join(lines) + "\n"
    manifest = _manifest("lyapunov", cfg, {
        "exponents": list(est.exponents),
        "standard_error": list(est.standard_error),
        "positive_sum": est.positive_sum,
        "trials": trials,
        "steps_per_trial": steps,
    })
    records = [{"exponent_index": i, "value": e, "standard_error": se}
               for i, (e, se) in enumerate(zip(est.exponents,
                                               est.standard_error))]
    return _write_outputs(out_dir, "lyapunov", csv_text, manifest,
                          records, fmt_kind)


def cmd_prescribe(cfg, out_dir, fmt_kind="csv"):
    try:
        chain = DivisorChain(tuple(int(x) for x in cfg["chain"]))
    except (KeyError, ValueError) as exc:
        raise ConfigError("invalid chain: %s" % exc)
    try:
        m = prescribe_symplectic(chain)
    except ValueError as exc:
        raise ConfigError(str(exc))
    ok = verify_prescription(m, chain)
    lines = ["row," + ",".join("c%d" % j for j in range(m.dim))]
    for i, row in enumerate(m.rows):
        lines.append("%d," % i + ",".join(str(x) for x in row))
    csv_text = "\n".join(lines) + "\n"
    manifest = _manifest("prescribe", cfg, {
        "matrix": m.to_lists(),
        "verification": ok,
        "snf_of_m_minus_i": list(smith_normal_form(
            m - identity(m.dim)).divisors),
    })
    records = {"matrix": m.to_lists(), "verification": ok}
    paths = _write_outputs(out_dir, "prescribe", csv_text, manifest,
                           records, fmt_kind)
    if not ok:
        raise AssertionError("prescription verification failed")
    return paths


def cmd_punctured(cfg, out_dir, fmt_kind="csv"):
    try:
        alphabet = int(cfg.get("alphabet", 2))
        lengths = [int(x) for x in cfg["lengths"]]
        samples = int(cfg.get("samples", 30))
        seed = int(cfg["seed"])
    except (KeyError, ValueError) as exc:
        raise ConfigError("invalid punctured config: %s" % exc)
    result = run_scaling_experiment(alphabet, lengths, samples, seed)
    lines = ["length,mean_longest_run"]
    for n, mean in result.rows:
        lines.append("%d,%s" % (n, fmt(mean)))
    csv_text = "\n".join(lines) + "\n"
    fit = None
    if result.fit is not None:
        fit = {"slope": result.fit.slope, "intercept": result.fit.intercept,
               "r_squared": result.fit.r_squared}
    manifest = _manifest("punctured", cfg, {"fit_vs_log_length": fit})
    records = [{"length": n, "mean_longest_run": mean}
               for n, mean in result.rows]
    return _write_outputs(out_dir, "punctured", csv_text, manifest,
                          records, fmt_kind)


def read_matrix_file(path: str) -> IntMatrix:
    """First line: dimension; then rows of whitespace-separated integers."""
    with open(path) as fh:
        tokens = fh.read().split()
    if not tokens:
        raise ConfigError("empty matrix file")
    try:
        n = int(tokens[0])
        vals = [int(t) for t in tokens[1:]]
    except ValueError:
        raise ConfigError("matrix file must contain integers")
    if len(vals) != n * n:
        raise ConfigError("expected %d entries, got %d" % (n * n, len(vals)))
    return IntMatrix(tuple(tuple(vals[i * n:(i + 1) * n]) for i in range(n)))


def cmd_snf(cfg, out_dir, fmt_kind="csv"):
    m = read_matrix_file(cfg["matrix_file"])
    chain = smith_normal_form(m)
    csv_text = "divisor\n" + "".join("%d\n" % d for d in chain.divisors)
    manifest = _manifest("snf", {"matrix_file": cfg["matrix_file"]},
                         {"divisors": list(chain.divisors)})
    records = {"divisors": list(chain.divisors)}
    return _write_outputs(out_dir, "snf", csv_text, manifest, records,
                          fmt_kind)


# --- argument parsing ----------------------------------------------------------

_BATCH_COMMANDS = {
    "torsion-stats": cmd_torsion_stats,
    "modp-rank": cmd_modp_rank,
    "heegaard": cmd_heegaard,
}


def _add_batch_flags(sp):
    sp.add_argument("--family", default=None)
    sp.add_argument("--genus", "--n", dest="param", type=int, default=None)
    sp.add_argument("--lengths", default=None, help="start:end:step")
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--mode", choices=[POSITIVE.split("-")[0], "symmetric"],
                    default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="symwalk",
        description="Exact-arithmetic experiments on random matrix walks: "
                    "torsion growth, mod-p ranks, Heegaard homology, "
                    "Lyapunov spectra, prescribed homology.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    for name in _BATCH_COMMANDS:
        sp = sub.add_parser(name)
        _add_batch_flags(sp)
        if name == "modp-rank":
            sp.add_argument("--primes", default=None,
                            help="comma-separated primes")
        _add_common_output_flags(sp)

    sp = sub.add_parser("lyapunov")
    sp.add_argument("--family", default=None)
    sp.add_argument("--genus", "--n", dest="param", type=int, default=None)
    sp.add_argument("--steps", type=int, default=None)
    sp.add_argument("--trials", type=int, default=None)
    sp.add_argument("--seed", type=int, default=None)
    _add_common_output_flags(sp)

    sp = sub.add_parser("prescribe")
    sp.add_argument("chain", nargs="?", default=None,
                    help="comma-separated divisor chain, e.g. 2,6")
    _add_common_output_flags(sp)

    sp = sub.add_parser("punctured")
    sp.add_argument("--alphabet", type=int, default=None)
    sp.add_argument("--lengths", default=None,
                    help="comma-separated word lengths")
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--seed", type=int, default=None)
    _add_common_output_flags(sp)

    sp = sub.add_parser("snf")
    sp.add_argument("matrix_file", nargs="?", default=None)
    _add_common_output_flags(sp)

    return ap


def _add_common_output_flags(sp):
    sp.add_argument("--config", default=None,
                    help="JSON config file (or an emitted manifest)")
    sp.add_argument("--out", default=".", help="output directory")
    sp.add_argument("--format", dest="fmt", choices=["csv", "json"],
                    default="csv")


def _load_config(path):
    with open(path) as fh:
        doc = json.load(fh)
    if isinstance(doc, dict) and "config" in doc and "artifact" in doc:
        return doc["config"]     # an emitted manifest
    return doc


_DEFAULTS = {
    "torsion-stats": {"family": "humphries", "param": 2,
                      "lengths": [100, 500, 50], "samples": 200, "seed": 1,
                      "mode": POSITIVE},
    "modp-rank": {"family": "humphries", "param": 2,
                  "lengths": [500, 500, 1], "samples": 2000, "seed": 1,
                  "mode": SYMMETRIC, "primes": [2]},
    "heegaard": {"family": "humphries", "param": 2,
                 "lengths": [100, 500, 100], "samples": 300, "seed": 1,
                 "mode": POSITIVE},
    "lyapunov": {"family": "humphries", "param": 2, "steps": 2000,
                 "trials": 100, "seed": 1},
    "prescribe": {},
    "punctured": {"alphabet": 2,
                  "lengths": [2 ** k for k in range(10, 17)],
                  "samples": 30, "seed": 1},
    "snf": {},
}


def _merge_config(args) -> dict:
    cfg = dict(_DEFAULTS[args.command])
    if getattr(args, "config", None):
        cfg.update(_load_config(args.config))
    # flags override file fields
    if getattr(args, "family", None) is not None:
        cfg["family"] = args.family
    if getattr(args, "param", None) is not None:
        cfg["param"] = args.param
    if getattr(args, "samples", None) is not None:
        cfg["samples"] = args.samples
    if getattr(args, "seed", None) is not None:
        cfg["seed"] = args.seed
    if getattr(args, "mode", None) is not None:
        cfg["mode"] = SYMMETRIC if args.mode == "symmetric" else POSITIVE
    if getattr(args, "steps", None) is not None:
        cfg["steps"] = args.steps
    if getattr(args, "trials", None) is not None:
        cfg["trials"] = args.trials
    if getattr(args, "alphabet", None) is not None:
        cfg["alphabet"] = args.alphabet
    if getattr(args, "lengths", None) is not None:
        if args.command == "punctured":
            cfg["lengths"] = [int(x) for x in args.lengths.split(",")]
        else:
            cfg["lengths"] = list(parse_lengths(args.lengths))
    if getattr(args, "primes", None) is not None:
        cfg["primes"] = [int(p) for p in args.primes.split(",")]
    if getattr(args, "chain", None) is not None:
        cfg["chain"] = [int(x) for x in args.chain.split(",")]
    if getattr(args, "matrix_file", None) is not None:
        cfg["matrix_file"] = args.matrix_file
    return cfg


_COMMANDS = dict(_BATCH_COMMANDS)
_COMMANDS.update({
    "lyapunov": cmd_lyapunov,
    "prescribe": cmd_prescribe,
    "punctured": cmd_punctured,
    "snf": cmd_snf,
})


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _merge_config(args)
        if args.command == "prescribe" and "chain" not in cfg:
            raise ConfigError("prescribe needs a divisor chain")
        if args.command == "snf" and "matrix_file" not in cfg:
            raise ConfigError("snf needs a matrix file")
        data_path, manifest_path = _COMMANDS[args.command](
            cfg, args.out, args.fmt)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2
    except NotPrimeError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("i/o error: %s" % exc, file=sys.stderr)
        return 3
    except Exception as exc:                       # internal invariant broke
        print("internal error: %s" % exc, file=sys.stderr)
        return 4
    print(data_path)
    print(manifest_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
