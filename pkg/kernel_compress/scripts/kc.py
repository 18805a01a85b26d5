# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers

import json
import logging
import os
import sys

from kc_core.algorithms import frank_wolfe
from kc_core.counterexample import build_atoms, divergence_check, coefficient_profile, measure_mean_check, run as run_herding
from kc_core.counterexample import trace_to_rows, verify_invariants
from kc_core.errors import InvariantViolationError, KernelCompressError, UsageError
from kc_core.kernels import PointSet, estimate_const_norm, kernel_from_config, plus_constant
from kc_core.learn import MMDMode, hierarchical_compress, krr_fit, mmd_sq, mmd_sq_compressed, simultaneous_kernel
from kc_core.runners import CompressionRunner
from kc_core.spectral import (ball_report, diam_lower_kfunctional, diam_lower_kminus, diam_lower_kplus,
                              diam_lower_mercer, k_functional, mercer_estimate, select_points)
from kc_core.storage import Coreset

from kernel_compress.cases import case_registry
from kernel_compress.cases.base import CompressCfg, CounterexampleCfg, DiagnoseCfg, KrrCfg, MmdCfg
from kernel_compress.utils import (Logger, check_inputs, class_to_dict, get_args, resolve_seed, set_seed,
                                   update_cfg_from_args, write_csv, write_json, write_manifest)

logger = logging.getLogger("kc")


def prepare(cfg, args):
    cfg = update_cfg_from_args(cfg, args)
    cfg.seed = resolve_seed(cfg.seed)
    set_seed(cfg.seed, getattr(args, "threads", None))
    return cfg


def out_dir_of(path):
    return os.path.dirname(os.path.abspath(path))


def compress(args):
    check_inputs(args.input)
    cfg = prepare(CompressCfg(), args)
    points = PointSet.read_csv(args.input)
    kernel = kernel_from_config(class_to_dict(cfg.kernel))
    if cfg.algorithm.simultaneous:
        kernel = simultaneous_kernel(kernel, cfg.algorithm.with_ysq)
        points = points.augmented()
    runner = CompressionRunner(kernel, points, cfg.to_dict(), log_dir=cfg.runner.log_dir, device=cfg.runner.device)
    coreset, trace = runner.run()

    out_dir = out_dir_of(args.out)
    os.makedirs(out_dir, exist_ok=True)
    coreset.save(args.out)
    outputs = [args.out]
    if trace is not None:
        trace_path = args.trace if args.trace is not None else os.path.join(out_dir, "trace.csv")
        os.makedirs(out_dir_of(trace_path), exist_ok=True)
        trace.write_csv(trace_path)
        outputs.append(trace_path)
    write_manifest(out_dir, "compress", cfg, inputs=[args.input], outputs=outputs)
    logger.info("compress: %d atoms from %d points", coreset.size, points.n)
    return 0


def krr(args):
    check_inputs(args.coreset, args.input, args.predict)
    cfg = prepare(KrrCfg(), args)
    coreset = Coreset.load(args.coreset)
    points = PointSet.read_csv(args.input)
    if cfg.kernel.kind is None:
        if not coreset.kernel:
            raise UsageError("The coreset stores no kernel; pass --kernel")
        kernel = kernel_from_config(coreset.kernel)
    else:
        kernel = kernel_from_config(class_to_dict(cfg.kernel))
    reg = krr_fit(kernel, coreset, points, lam=cfg.regression.lam, mode=cfg.regression.mode,
                  regularizer=cfg.regression.regularizer)
    predictions = None
    if args.predict is not None:
        query = PointSet.read_csv(args.predict)
        predictions = (query, reg.predict(query.points))

    out_dir = out_dir_of(args.out)
    os.makedirs(out_dir, exist_ok=True)
    write_json(reg.to_dict(), args.out)
    outputs = [args.out]
    if predictions is not None:
        query, values = predictions
        path = os.path.join(out_dir, "predictions.csv")
        header = [f"x{i + 1}" for i in range(query.dim)] + ["prediction"]
        write_csv(path, header, [row + [v] for row, v in zip(query.points.tolist(), values.tolist())])
        outputs.append(path)
    write_manifest(out_dir, "krr", cfg, inputs=[args.coreset, args.input, args.predict], outputs=outputs)
    return 0


def mmd(args):
    check_inputs(args.a, args.b)
    cfg = prepare(MmdCfg(), args)
    points_a = PointSet.read_csv(args.a)
    points_b = PointSet.read_csv(args.b)
    kernel = kernel_from_config(class_to_dict(cfg.kernel))
    c = cfg.compression
    if c.hierarchical:
        coreset_a = hierarchical_compress(kernel, points_a, c.batch_size, c.per_batch_T, c.T)
        coreset_b = hierarchical_compress(kernel, points_b, c.batch_size, c.per_batch_T, c.T)
        result = mmd_sq_compressed(kernel, coreset_a, points_a, coreset_b, points_b, mode=MMDMode.Hierarchical)
    elif c.T is not None:
        coreset_a, _ = frank_wolfe(kernel, points_a, c.T)
        coreset_b, _ = frank_wolfe(kernel, points_b, c.T)
        result = mmd_sq_compressed(kernel, coreset_a, points_a, coreset_b, points_b)
    else:
        result = mmd_sq(kernel, points_a, points_b)

    out_dir = out_dir_of(args.out)
    os.makedirs(out_dir, exist_ok=True)
    write_json(result.to_dict(), args.out)
    write_manifest(out_dir, "mmd", cfg, inputs=[args.a, args.b], outputs=[args.out])
    return 0


def diagnose(args):
    check_inputs(args.input)
    cfg = prepare(DiagnoseCfg(), args)
    points = PointSet.read_csv(args.input)
    kernel = kernel_from_config(class_to_dict(cfg.kernel))
    b = cfg.bound
    if b.variant not in ("kplus", "kminus", "mercer", "kfunctional"):
        raise UsageError(f"Unknown bound variant '{b.variant}'")
    grid = points
    if b.select is not None:
        points = select_points(plus_constant(kernel) if b.variant == "kplus" else kernel, grid, b.select)

    if b.variant == "kplus":
        report = diam_lower_kplus(kernel, points)
    elif b.variant == "kminus":
        c_sq = b.c_sq if b.c_sq is not None else 1. / estimate_const_norm(kernel, points)
        report = diam_lower_kminus(kernel, points, c_sq)
    elif b.variant == "mercer":
        if b.lambda_tilde is not None:
            report = diam_lower_mercer(b.lambda_tilde, b.contains_const)
        else:
            estimate = mercer_estimate(kernel if b.contains_const else plus_constant(kernel), grid)
            report = diam_lower_mercer(estimate, b.contains_const, d_used=grid.n, estimated=True)
    else:
        kf = k_functional(kernel, grid, b.t, b.basis_size)
        report = diam_lower_kfunctional(kernel, points, kf.value, b.contains_const)

    ball = None
    if cfg.ball.q is not None:
        sup_k = cfg.ball.sup_k if cfg.ball.sup_k is not None else float(kernel.diag(grid.points).max())
        ball = ball_report(report.diam_lower, cfg.ball.q, cfg.ball.c_density, cfg.ball.L, grid.dim, sup_k)

    out_dir = out_dir_of(args.out)
    os.makedirs(out_dir, exist_ok=True)
    write_json(report.to_dict(), args.out)
    outputs = [args.out]
    if ball is not None:
        path = os.path.join(out_dir, "ball.json")
        write_json(ball.to_dict(), path)
        outputs.append(path)
    write_manifest(out_dir, "diagnose", cfg, inputs=[args.input], outputs=outputs)
    return 0


def counterexample(args):
    cfg = prepare(CounterexampleCfg(), args)
    r = cfg.run
    state = run_herding(build_atoms(r.n_max), r.T, stop_at_boundary=r.stop_at_boundary)
    invariants = verify_invariants(state)
    divergence = divergence_check(state)
    profile = coefficient_profile(state, r.profile)
    measure = measure_mean_check(cfg.measure.n_max)

    out_dir = args.out_dir
    os.makedirs(out_dir, exist_ok=True)
    outputs = [os.path.join(out_dir, "trace.csv")]
    write_csv(outputs[0], ["t", "kind", "n", "i", "norm_sq"], trace_to_rows(state))
    for m, rows in profile.items():
        path = os.path.join(out_dir, f"profile_m{m}.csv")
        write_csv(path, ["n", "abs_coef", "lower_bound"], rows)
        outputs.append(path)
    path = os.path.join(out_dir, "invariants.json")
    write_json({"invariants": invariants, "divergence": divergence}, path)
    outputs.append(path)
    path = os.path.join(out_dir, "measure_check.json")
    write_json(measure, path)
    outputs.append(path)
    write_manifest(out_dir, "counterexample", cfg, outputs=outputs)
    if args.plot:
        Logger().plot_coefficient_profile(profile, os.path.join(out_dir, "coefficient_profile.png"))

    if not invariants["ok"]:
        raise InvariantViolationError(invariants)
    if not divergence["ok"]:
        raise InvariantViolationError(divergence)
    if not measure["ok"]:
        raise InvariantViolationError({"first_violation": measure["worst_coordinate"]})
    return 0


def repro(args):
    if args.list:
        for name in case_registry.names:
            print(f"{name}{' (slow)' if name in case_registry.slow else ''}")
        return 0
    names = args.case if args.case else case_registry.names
    for name in names:
        case_registry.get_cfg(name)
    if args.skip_slow:
        names = [n for n in names if n not in case_registry.slow]
    seed = getattr(args, "seed", None)
    set_seed(resolve_seed(seed), getattr(args, "threads", None))

    out_dir = args.out_dir
    rows, outputs = [], []
    for name in names:
        case = case_registry.make_case(name, seed=seed, out_dir=os.path.join(out_dir, name), plot=args.plot)
        result = case.run()
        rows.append([name, result["passed"], result["seed"]])
        outputs.extend(case.written)
        print(f"{name:<20} {'PASS' if result['passed'] else 'FAIL'}")

    os.makedirs(out_dir, exist_ok=True)
    summary = {"cases": [{"case": n, "passed": p, "seed": s} for n, p, s in rows],
               "passed": all(p for _, p, _ in rows)}
    path = os.path.join(out_dir, "summary.json")
    write_json(summary, path)
    outputs.append(path)
    path = os.path.join(out_dir, "summary.csv")
    write_csv(path, ["case", "passed", "seed"], rows)
    outputs.append(path)
    write_manifest(out_dir, "repro", {"cases": names, "seed": resolve_seed(seed)}, outputs=outputs)
    if not summary["passed"]:
        failed = [n for n, p, _ in rows if not p]
        print(f"kc: failed cases: {', '.join(failed)}", file=sys.stderr)
        return InvariantViolationError.exit_code
    return 0


COMMANDS = {
    "compress": compress,
    "krr": krr,
    "mmd": mmd,
    "diagnose": diagnose,
    "counterexample": counterexample,
    "repro": repro,
}


def main(argv=None):
    try:
        args = get_args(argv)
        logging.basicConfig(stream=sys.stderr, level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
                            format="%(levelname)s %(name)s: %(message)s")
        return COMMANDS[args.command](args)
    except KernelCompressError as e:
        print(f"kc: error: {e}", file=sys.stderr)
        return e.exit_code
    except (FileNotFoundError, json.JSONDecodeError) as e:
        print(f"kc: error: {e}", file=sys.stderr)
        return UsageError.exit_code


def run():
    sys.exit(main())


if __name__ == '__main__':
    run()
