# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import argparse
import csv
import hashlib
import inspect
import json
import os
import platform
import random

import numpy as np
import torch

import kc_core
from kc_core.errors import UsageError

SEED_ENV = 'KC_SEED'


def class_to_dict(obj) -> dict:
    if not hasattr(obj, "__dict__"):
        return obj
    result = {}
    for key in dir(obj):
        if key.startswith("_"):
            continue
        element = []
        val = getattr(obj, key)
        if inspect.isroutine(val):
            continue
        if isinstance(val, list):
            for item in val:
                element.append(class_to_dict(item))
        elif isinstance(val, dict):
            element = dict(val)
        else:
            element = class_to_dict(val)
        result[key] = element
    return result


def resolve_seed(seed):
    """ KC_SEED wins over the command line, the command line over the config. """
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip() != "":
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer, got '{env}'")
    return 0 if seed is None else int(seed)


def set_seed(seed, threads=None):
    print("Setting seed: {}".format(seed))

    random.seed(seed)
    np.random.seed(seed % 2**32)
    torch.manual_seed(seed)
    os.environ['PYTHONHASHSEED'] = str(seed)
    if threads is not None:
        if threads < 1:
            raise UsageError(f"--threads must be at least 1, got {threads}")
        torch.set_num_threads(threads)


def make_generator(seed) -> torch.Generator:
    return torch.Generator().manual_seed(int(seed) % 2**63)


def load_kernel_cfg(value):
    """ Kernel config from a JSON string or the path of a JSON file. """
    if value is None:
        return None
    if isinstance(value, dict):
        return value
    if os.path.isfile(value):
        with open(value) as f:
            text = f.read()
    else:
        text = value
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"--kernel is neither a JSON file nor valid JSON: {e}")
    if not isinstance(cfg, dict):
        raise UsageError("--kernel must be a JSON object with 'kind' and 'params'")
    return cfg


def check_inputs(*paths):
    """ Every input must exist before anything is computed or written. """
    for path in paths:
        if path is None:
            continue
        if not os.path.isfile(path):
            raise UsageError(f"Input file not found: {path}")


def parse_int_list(value) -> list:
    if isinstance(value, (list, tuple)):
        return [int(v) for v in value]
    try:
        return [int(v) for v in str(value).split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"Expected a comma separated list of integers, got '{value}'")


def to_jsonable(obj):
    if isinstance(obj, torch.Tensor):
        return obj.tolist()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "value") and hasattr(obj, "name"):
        return obj.value
    return obj


def write_json(obj, path):
    with open(path, "w") as f:
        json.dump(to_jsonable(obj), f, indent=2, sort_keys=True)
        f.write("\n")


def write_csv(path, header, rows):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def versions() -> dict:
    from kernel_compress import __version__
    return {"kernel_compress": __version__, "kc_core": kc_core.__version__, "torch": torch.__version__,
            "numpy": np.__version__, "python": platform.python_version()}


def write_manifest(out_dir, subcommand, cfg, inputs=(), outputs=()):
    """ manifest.json next to the outputs: config, versions and sha256 of every input and output file. """
    manifest = {
        "subcommand": subcommand,
        "config": class_to_dict(cfg) if not isinstance(cfg, dict) else cfg,
        "versions": versions(),
        "inputs": {os.path.basename(p): file_digest(p) for p in inputs if p is not None},
        "outputs": {os.path.relpath(p, out_dir): file_digest(p) for p in outputs if p is not None and os.path.isfile(p)},
    }
    path = os.path.join(out_dir, "manifest.json")
    write_json(manifest, path)
    return path


def update_cfg_from_args(cfg, args):
    """ Command line values override config defaults. Only options that were given are applied. """
    if cfg is None:
        return cfg
    if getattr(args, "seed", None) is not None or os.environ.get(SEED_ENV):
        cfg.seed = resolve_seed(getattr(args, "seed", None))
    kernel = load_kernel_cfg(getattr(args, "kernel", None))
    if kernel is not None and hasattr(cfg, "kernel"):
        if "kind" not in kernel:
            raise UsageError("Kernel config needs a 'kind' field")
        cfg.kernel.kind = kernel["kind"]
        cfg.kernel.params = dict(kernel.get("params", {}) or {})
    command = getattr(args, "command", None)
    if command == "compress":
        _apply(cfg.algorithm, args, {"algo": "name", "T": "T", "eps": "eps", "init_index": "init_index"})
        if args.streaming:
            cfg.algorithm.streaming = True
        if args.simultaneous:
            cfg.algorithm.simultaneous = True
        if args.with_ysq:
            cfg.algorithm.with_ysq = True
        _apply(cfg.runner, args, {"log_dir": "log_dir", "print_interval": "print_interval"})
        if args.verbose:
            cfg.runner.verbose = True
    elif command == "krr":
        _apply(cfg.regression, args, {"lam": "lam", "mode": "mode", "regularizer": "regularizer"})
    elif command == "mmd":
        _apply(cfg.compression, args, {"compress": "T", "batch_size": "batch_size", "per_batch_T": "per_batch_T"})
        if args.hierarchical:
            cfg.compression.hierarchical = True
    elif command == "diagnose":
        _apply(cfg.bound, args, {"variant": "variant", "c_sq": "c_sq", "lambda_tilde": "lambda_tilde",
                                 "select": "select", "t": "t", "basis_size": "basis_size"})
        if args.contains_const:
            cfg.bound.contains_const = True
        _apply(cfg.ball, args, {"q": "q", "c_density": "c_density", "L": "L", "sup_k": "sup_k"})
    elif command == "counterexample":
        _apply(cfg.run, args, {"T": "T", "nmax": "n_max"})
        if args.profile is not None:
            cfg.run.profile = parse_int_list(args.profile)
        if args.stop_at_boundary:
            cfg.run.stop_at_boundary = True
        _apply(cfg.measure, args, {"measure_nmax": "n_max"})
    return cfg


def _apply(section, args, mapping):
    for arg_name, key in mapping.items():
        value = getattr(args, arg_name, None)
        if value is not None:
            setattr(section, key, value)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_parameters(parser, parameters):
    for argument in parameters:
        argument = dict(argument)
        names = [argument.pop("name")] + list(argument.pop("aliases", []))
        parser.add_argument(*names, **argument)


def get_args(argv=None):
    common_parameters = [
        {"name": "--seed", "type": int, "help": "Random seed. Overrides config file if provided; KC_SEED overrides both."},
        {"name": "--threads", "type": int, "help": "Number of torch intra-op threads."},
        {"name": "--log_level", "type": str, "default": "WARNING", "help": "Logging level on stderr (DEBUG, INFO, WARNING, ERROR)."},
        {"name": "--kernel", "type": str, "help": "Kernel config as JSON or path to a JSON file: {\"kind\": ..., \"params\": {...}}."},
    ]
    subcommands = {
        "compress": ("Compress an empirical measure into a weighted coreset", [
            {"name": "--input", "type": str, "required": True, "help": "PointSet CSV with header x1,...,xl[,y]."},
            {"name": "--algo", "type": str, "choices": ["herd", "fw", "epsnet"], "help": "Compression algorithm."},
            {"name": "--T", "type": int, "help": "Number of iterations."},
            {"name": "--eps", "type": float, "help": "Grid resolution of the eps-net baseline."},
            {"name": "--init_index", "type": int, "help": "First herding selection."},
            {"name": "--streaming", "action": "store_true", "default": False, "help": "Evaluate Gram rows on demand."},
            {"name": "--simultaneous", "action": "store_true", "default": False, "help": "Compress (y, x) with the direct-sum kernel."},
            {"name": "--with_ysq", "aliases": ["--with-ysq"], "action": "store_true", "default": False, "help": "Add the y^2 term to the direct-sum kernel."},
            {"name": "--out", "type": str, "default": "coreset.json", "help": "Coreset JSON output."},
            {"name": "--trace", "type": str, "help": "Trace CSV output (t,chosen_index,step,error_sq)."},
            {"name": "--log_dir", "type": str, "help": "Tensorboard log directory."},
            {"name": "--print_interval", "type": int, "help": "Console report every this many iterations."},
            {"name": "--verbose", "action": "store_true", "default": False, "help": "Print the console report."},
        ]),
        "krr": ("Weighted kernel ridge regression on a coreset", [
            {"name": "--coreset", "type": str, "required": True, "help": "Coreset JSON."},
            {"name": "--input", "type": str, "required": True, "help": "The PointSet CSV the coreset was built from, with y."},
            {"name": "--lambda", "dest": "lam", "type": float, "help": "Regularization strength."},
            {"name": "--mode", "type": str, "choices": ["sub", "min"], "help": "Suboptimal or minimal-norm solution."},
            {"name": "--regularizer", "type": str, "choices": ["weights", "identity"], "help": "lambda W^-1 or lambda I."},
            {"name": "--predict", "type": str, "help": "PointSet CSV to predict on."},
            {"name": "--out", "type": str, "default": "regressor.json", "help": "Regressor JSON output."},
        ]),
        "mmd": ("Maximum mean discrepancy between two samples", [
            {"name": "--a", "type": str, "required": True, "help": "First sample CSV."},
            {"name": "--b", "type": str, "required": True, "help": "Second sample CSV."},
            {"name": "--compress", "type": int, "help": "Compress both samples with this many Frank-Wolfe steps first."},
            {"name": "--hierarchical", "action": "store_true", "default": False, "help": "Batch then recompress."},
            {"name": "--batch_size", "type": int, "help": "Hierarchical batch size."},
            {"name": "--per_batch_T", "type": int, "help": "Hierarchical steps per batch."},
            {"name": "--out", "type": str, "default": "mmd.json", "help": "MMDResult JSON output."},
        ]),
        "diagnose": ("Spectral diameter bound and ball report", [
            {"name": "--input", "type": str, "required": True, "help": "PointSet CSV of the evaluation points (or grid)."},
            {"name": "--variant", "type": str, "choices": ["kplus", "kminus", "mercer", "kfunctional"], "help": "Bound variant."},
            {"name": "--c_sq", "type": float, "help": "1 / ||1||^2 for kminus."},
            {"name": "--lambda_tilde", "type": float, "help": "Mercer eigenvalue; estimated on the input grid when omitted."},
            {"name": "--contains_const", "action": "store_true", "default": False, "help": "The constant function lies in H."},
            {"name": "--select", "type": int, "help": "Select this many points from the input by pivoted Cholesky."},
            {"name": "--t", "type": float, "help": "K-functional parameter."},
            {"name": "--basis_size", "type": int, "help": "K-functional basis size."},
            {"name": "--q", "type": float, "help": "Also emit a BallReport at this probability."},
            {"name": "--c_density", "type": float, "help": "Density lower bound c."},
            {"name": "--L", "type": float, "help": "Lipschitz constant of the kernel sections."},
            {"name": "--sup_k", "type": float, "help": "||k||_inf."},
            {"name": "--out", "type": str, "default": "report.json", "help": "Report JSON output."},
        ]),
        "counterexample": ("Simulate herding on the divergent counterexample", [
            {"name": "--T", "type": int, "help": "Number of herding steps."},
            {"name": "--nmax", "type": int, "help": "Truncation level of the atom set."},
            {"name": "--profile", "type": str, "help": "Comma separated m values for the coefficient tables."},
            {"name": "--measure_nmax", "type": int, "help": "Truncation level of the measure check."},
            {"name": "--stop_at_boundary", "action": "store_true", "default": False, "help": "Stop instead of failing at the truncation boundary."},
            {"name": "--out-dir", "dest": "out_dir", "type": str, "default": "counterexample", "help": "Output directory."},
            {"name": "--plot", "action": "store_true", "default": False, "help": "Also write PNG plots."},
        ]),
        "repro": ("Run the acceptance cases and write a summary table", [
            {"name": "--case", "type": str, "action": "append", "help": "Case name; repeat for several. All cases when omitted."},
            {"name": "--list", "action": "store_true", "default": False, "help": "List the registered cases and exit."},
            {"name": "--skip_slow", "action": "store_true", "default": False, "help": "Skip the long-running cases."},
            {"name": "--out-dir", "dest": "out_dir", "type": str, "default": "repro", "help": "Output directory."},
            {"name": "--plot", "action": "store_true", "default": False, "help": "Also write PNG plots."},
        ]),
    }
    parser = _Parser(prog="kc", description="Kernel mean embedding compression")
    _add_parameters(parser, common_parameters)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name, (description, custom_parameters) in subcommands.items():
        sp = sub.add_parser(name, help=description, description=description)
        # global flags are accepted after the subcommand too
        _add_parameters(sp, [dict(p, default=argparse.SUPPRESS) for p in common_parameters])
        _add_parameters(sp, custom_parameters)
    args = parser.parse_args(argv)
    if args.command is None:
        raise UsageError("kc: a subcommand is required (compress, krr, mmd, diagnose, counterexample, repro)")
    return args
