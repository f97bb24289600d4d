"""``fuzzbl`` command line.

Exit codes: 0 ok, 1 usage, 2 formula parse error, 3 valuation error,
4 data error. Numbers are written with 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from fuzzbl import __version__
from fuzzbl import aggregation, belief, fairness, hooker_williams as hwmod, measures, roc
from fuzzbl.expr import ParseError, Valuation, ValuationError, evaluate, free_predicates, parse
from fuzzbl.logic import Logic, TruthValueError

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VALUATION, EXIT_DATA = 0, 1, 2, 3, 4

MEASURES = ("prule", "cv", "fpr", "fnr", "eo")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def num(value):
    """Round to 12 significant digits; integral values become ints."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if value is None:
        return None
    r = float(format(float(value), ".12g"))
    return int(r) if r.is_integer() else r


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (float, int, np.floating, np.integer, np.bool_)) and not isinstance(obj, bool):
        return num(obj)
    return obj


def emit(obj, out=None) -> None:
    out = out or sys.stdout
    out.write(json.dumps(_clean(obj), sort_keys=False) + "\n")


def _logic(args) -> Logic:
    if args.logic is None:
        raise UsageError("--logic is required (godel, product or lukasiewicz)")
    try:
        return Logic.parse(args.logic)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


# ---------------------------------------------------------------- commands


def cmd_eval(args) -> int:
    logic = _logic(args)
    if (args.formula is None) == (args.file is None):
        raise UsageError("give exactly one of FORMULA or --file")
    source = args.formula if args.formula is not None else Path(args.file).read_text(encoding="utf-8")
    expr = parse(source)
    val = Valuation.load(args.valuation) if args.valuation else Valuation()
    for item in args.set or ():
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise UsageError(f"--set expects NAME=VALUE, got {item!r}")
        val.scalars[name.strip()] = float(value)
    val = Valuation(dict(val.scalars), dict(val.families), dict(val.domains))
    missing = free_predicates(expr) - set(val.scalars) - set(val.families)
    if missing:
        raise ValuationError(f"no truth value for predicate(s): {', '.join(sorted(missing))}")
    emit({"truth": evaluate(expr, logic, val)})
    return EXIT_OK


def cmd_bias(args) -> int:
    logic = _logic(args)
    if args.s is None or args.e is None:
        raise UsageError("--s and --e are required")
    emit(fairness.fairness_report(logic, args.s, args.e, args.f).to_dict())
    return EXIT_OK


def cmd_gen_space(args) -> int:
    logic = _logic(args)
    if args.s is None:
        raise UsageError("--s is required")
    intervals, points = fairness.generation_space(logic, args.s)
    text = " U ".join([f"[{num(a)}, {num(b)}]" for a, b in intervals] + [f"{{{num(p)}}}" for p in points])
    emit({"logic": logic.value, "s": args.s, "intervals": intervals, "points": points, "generation_space": text})
    return EXIT_OK


def _audit_group(table, column, value, compare, logic, measure, s_override, label_value):
    dataset, other = table.dataset(column, value, compare)
    rates = measures.group_rates(dataset)
    rates_other = measures.group_rates(dataset, other)
    if measure in ("prule", "cv"):
        m, mp = rates.positive_rate, rates_other.positive_rate
        value_of = measures.prule if measure == "prule" else measures.cv
        measure_value = value_of(m, mp)
    elif measure in ("fpr", "fnr"):
        if dataset.labels is None:
            raise measures.DataError(f"{measure} needs labels")
        m, mp = getattr(rates, measure), getattr(rates_other, measure)
        if m is None or mp is None:
            missing = "negatives" if measure == "fpr" else "positives"
            raise measures.DataError(f"{measure} is undefined for a group with no {missing}")
        measure_value = measures.delta_measure(m, mp)
    else:
        if dataset.labels is None:
            raise measures.DataError("eo needs labels")
        masks = (dataset.group_mask, other)
        cond = [dataset.predictions[mk & (dataset.labels == label_value)] for mk in masks]
        if any(len(c) == 0 for c in cond):
            raise measures.DataError(f"a group has no samples with label {label_value}")
        m, mp = float(cond[0].mean()), float(cond[1].mean())
        measure_value = measures.equalized_odds_diff(dataset, masks, label_value)
    e = measures.discrimination_truth(logic, m, mp)
    population = dataset.group_mask | other
    s = s_override if s_override is not None else float(dataset.group_mask.sum() / population.sum())
    report = fairness.fairness_report(logic, s, e, 1.0).to_dict()
    return {
        "group": {"column": column, "value": value, "compare": compare},
        "measure": measure,
        "rates": {"group": rates.__dict__, "compare": rates_other.__dict__},
        "m": m,
        "m_prime": mp,
        "measure_value": measure_value,
        "discrimination": e,
        **report,
    }


def cmd_audit(args) -> int:
    logic = _logic(args)
    if args.data is None or args.protected is None:
        raise UsageError("--data and --protected are required")
    column = args.group_column[0] if args.group_column else "group"
    table = measures.load_audit_csv(args.data, [column])
    result = _audit_group(table, column, args.protected, args.compare, logic, args.measure, args.s, args.label_value)
    emit({"logic": logic.value, **{k: v for k, v in result.items() if k != "logic"}})
    return EXIT_OK


def cmd_aggregate(args) -> int:
    logic = _logic(args)
    if (args.biases is None) == (args.data is None):
        raise UsageError("give exactly one of --biases or --data")
    groups = None
    if args.biases is not None:
        try:
            biases = json.loads(args.biases)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--biases is not JSON: {exc}") from None
        if not isinstance(biases, list) or not biases:
            raise UsageError("--biases must be a non-empty JSON array")
    else:
        columns = args.group_column or ["group"]
        table = measures.load_audit_csv(args.data, columns)
        groups, biases = [], []
        for column in columns:
            for value in sorted(set(table.groups[column].tolist())):
                r = _audit_group(table, column, value, "complement", logic, args.measure, None, args.label_value)
                groups.append({"column": column, "value": value, "s": r["s"], "discrimination": r["discrimination"], "bias": r["bias"]})
                biases.append(r["bias"])
    out = {
        "logic": logic.value,
        "biases": biases,
        "rawl": aggregation.rawl(biases),
        "unbias": aggregation.unbias(logic, biases),
        "fair": aggregation.fair_conjunction(logic, biases),
    }
    if groups is not None:
        out["groups"] = groups
    emit(out)
    return EXIT_OK


def cmd_roc_sim(args) -> int:
    if args.out is None:
        raise UsageError("--out is required")
    cs = roc.c_grid(args.c_min, args.c_max, args.steps, args.spacing)
    rows = roc.sweep_experiment(cs, args.n, args.seed)
    roc.write_sweep_csv(rows, args.out)
    return EXIT_OK


def cmd_hw(args) -> int:
    if args.delta is None:
        raise UsageError("--delta is required")
    if args.contour is not None:
        if args.out is None:
            raise UsageError("--contour needs --out")
        rows = hwmod.hw_contour(args.contour, args.delta)
        hwmod.write_contour_csv(rows, args.out)
        return EXIT_OK
    if not args.utilities:
        raise UsageError("--utilities is required")
    try:
        us, delta = hwmod.scale_utilities(args.utilities, args.delta, args.scale)
    except ValueError as exc:
        raise measures.DataError(str(exc)) from None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", hwmod.ScalingWarning)
        profile = hwmod.UtilityProfile(us, delta)
        score = hwmod.hw_score(profile)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    out = {
        "utilities": list(profile.utilities),
        "delta": profile.delta,
        "criterion": "FairHW" if args.fair else "HW",
        "hw_score": score,
        "score_in_unit_interval": 0.0 <= score <= 1.0,
        "truth": hwmod.fair_hw_truth(profile) if args.fair else hwmod.hw_truth(profile),
        "standard_form_feasible": hwmod.standard_form_feasible(profile),
    }
    emit(out)
    return EXIT_OK


def cmd_belief_train(args) -> int:
    if args.input is None or args.out is None:
        raise UsageError("--in and --out are required")
    try:
        examples = belief.load_belief_csv(args.input)
        model = belief.train_belief_model(
            examples,
            learning_rate=args.learning_rate,
            tolerance=args.tolerance,
            max_epochs=args.max_epochs,
            seed=args.seed,
        )
    except (ValueError, KeyError) as exc:
        raise measures.DataError(str(exc)) from None
    model.save(args.out)
    rows = []
    for ex in examples:
        pred = belief.predict_discrimination(model, ex.features)
        ok = None if ex.max_deviation is None else abs(pred - ex.target) <= ex.max_deviation
        rows.append({"target": ex.target, "prediction": pred, "within_max_deviation": ok})
    emit({"epochs": model.epochs, "final_loss": model.final_loss, "step_halvings": model.step_halvings, "fit": rows})
    return EXIT_OK


def cmd_belief_predict(args) -> int:
    if args.model is None or args.prule is None or args.cv is None:
        raise UsageError("--model, --prule and --cv are required")
    try:
        model = belief.BeliefModel.load(args.model)
        e = belief.predict_discrimination(model, [1.0 - args.prule, args.cv])
    except (ValueError, KeyError, OSError) as exc:
        raise measures.DataError(str(exc)) from None
    emit({"prule": args.prule, "cv": args.cv, "discrimination": e})
    return EXIT_OK


def cmd_belief_fair(args) -> int:
    logic = _logic(args)
    if args.s is None or args.e is None or args.b is None:
        raise UsageError("--s, --e and --b are required")
    emit({"logic": logic.value, "s": args.s, "e": args.e, "b": args.b, "fair": belief.evaluate_toy_definition(logic, args.s, args.e, args.b)})
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fuzzbl", description="Fuzzy-logic group fairness evaluation.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--config", help="JSON file of option defaults (flags override it)")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    subs = {}

    def add(name, func, help):
        sp = sub.add_parser(name, help=help, description=help)
        sp.set_defaults(func=func)
        subs[name] = sp
        return sp

    def logic_opt(sp):
        sp.add_argument("--logic", help="godel, product or lukasiewicz")

    sp = add("eval", cmd_eval, "Evaluate a BL formula.")
    sp.add_argument("formula", nargs="?")
    sp.add_argument("--file", help="read the formula from a file")
    sp.add_argument("--valuation", help="valuation JSON (scalars, families, domains)")
    sp.add_argument("--set", action="append", metavar="NAME=VALUE", help="scalar truth value; repeatable")
    logic_opt(sp)

    sp = add("bias", cmd_bias, "Standard-form imbalance, bias and fairness for given truth values.")
    logic_opt(sp)
    sp.add_argument("--s", type=float)
    sp.add_argument("--e", type=float)
    sp.add_argument("--f", type=float, default=1.0)

    sp = add("gen-space", cmd_gen_space, "Discrimination values in the generation space.")
    logic_opt(sp)
    sp.add_argument("--s", type=float)

    def audit_opts(sp):
        logic_opt(sp)
        sp.add_argument("--data", help="audit CSV with prediction,label,group columns")
        sp.add_argument("--group-column", action="append", help="group column name (default: group)")
        sp.add_argument("--measure", choices=MEASURES, default="cv")
        sp.add_argument("--label-value", type=int, choices=(0, 1), default=1, help="label conditioned on by eo")

    sp = add("audit", cmd_audit, "Audit one protected group of a prediction CSV.")
    audit_opts(sp)
    sp.add_argument("--protected", help="group value to protect")
    sp.add_argument("--compare", default="complement", help="'complement' or another group value")
    sp.add_argument("--s", type=float, help="group membership truth value (default: population share)")

    sp = add("aggregate", cmd_aggregate, "Rawl, Unbias and Fair reductions of many biases.")
    audit_opts(sp)
    sp.add_argument("--biases", help="JSON array of bias truth values")

    sp = add("roc-sim", cmd_roc_sim, "Synthetic ABROCA/RBROCA sweep to CSV.")
    sp.add_argument("--c-min", type=float, default=1.0)
    sp.add_argument("--c-max", type=float, default=32.0)
    sp.add_argument("--steps", type=int, default=20)
    sp.add_argument("--spacing", choices=("log", "linear"), default="log")
    sp.add_argument("--n", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")

    sp = add("hw", cmd_hw, "Hooker-Williams score and its truth values.")
    sp.add_argument("--utilities", type=_floats)
    sp.add_argument("--delta", type=float)
    sp.add_argument("--fair", action="store_true", help="report FairHW instead of HW")
    sp.add_argument("--scale", choices=("auto", "minmax", "none"), default="auto")
    sp.add_argument("--contour", type=int, metavar="N", help="write an N x N contour grid")
    sp.add_argument("--out")

    sp = add("belief", None, "Belief model training, prediction and the toy definition.")
    bsub = sp.add_subparsers(dest="belief_command", metavar="ACTION", parser_class=_Parser)
    bp = bsub.add_parser("train", help="train on a belief CSV")
    bp.set_defaults(func=cmd_belief_train)
    bp.add_argument("--in", dest="input")
    bp.add_argument("--out")
    bp.add_argument("--seed", type=int, default=0)
    bp.add_argument("--learning-rate", type=float, default=1e-3)
    bp.add_argument("--tolerance", type=float, default=1e-6)
    bp.add_argument("--max-epochs", type=int, default=100_000)
    subs["belief train"] = bp
    bp = bsub.add_parser("predict", help="predict discrimination from prule and cv")
    bp.set_defaults(func=cmd_belief_predict)
    bp.add_argument("--model")
    bp.add_argument("--prule", type=float)
    bp.add_argument("--cv", type=float)
    subs["belief predict"] = bp
    bp = bsub.add_parser("fair", help="evaluate the business-necessity toy definition")
    bp.set_defaults(func=cmd_belief_fair)
    logic_opt(bp)
    for name in ("s", "e", "b"):
        bp.add_argument(f"--{name}", type=float)
    subs["belief fair"] = bp

    p._fuzzbl_subparsers = subs
    return p


def _apply_config(parser, argv) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    try:
        with open(known.config, encoding="utf-8") as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {known.config}: {exc}") from None
    if not isinstance(config, dict):
        raise UsageError("config must be a JSON object")
    shared = {k.replace("-", "_"): v for k, v in config.items() if not isinstance(v, dict)}
    for name, sp in parser._fuzzbl_subparsers.items():
        dests = {a.dest for a in sp._actions}
        section = config.get(name, {})
        values = {k: v for k, v in shared.items() if k in dests}
        values.update({k.replace("-", "_"): v for k, v in section.items()})
        if values:
            sp.set_defaults(**values)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        if getattr(args, "func", None) is None:
            parser._fuzzbl_subparsers[args.command].print_help(sys.stderr)
            return EXIT_USAGE
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        print(f"fuzzbl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"fuzzbl: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValuationError, TruthValueError) as exc:
        print(f"fuzzbl: valuation error: {exc}", file=sys.stderr)
        return EXIT_VALUATION
    except (measures.DataError, OSError) as exc:
        print(f"fuzzbl: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
