"""Command-line front end.

    gl3bethe [--backend B] [--seed S] [--config FILE] [--json-out PATH] <command> ...

Commands: verify, bethe, dual, scalar, izergin, kernels.  Exit status is 0
when every check passes, 1 when a check fails and 2 for usage or
configuration errors (including rejected parameters).  A config file (JSON or
TOML) supplies defaults; command-line flags override it.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .bethe import bethe_vector, direct_scalar_product, dual_bethe_vector
from .errors import (
    BackendMismatch,
    ConfigError,
    Gl3BetheError,
    ParameterCollision,
    ShapeMismatch,
    SingularParameters,
    TooManyVariables,
)
from .field import BACKENDS, RATIONAL, is_zero, scalar, to_json
from .kernels import (
    check_izergin_identity,
    izergin_determinant,
    izergin_sym_t,
    izergin_sym_x,
    kernel_KE,
    kernel_KF,
    kernel_KF_example,
    kernel_Y,
    kernel_Z,
)
from .residue import compare_scalar_products, normalization, scalar_product_kernel
from .rmatrix import ChainSpec
from .sampling import Sampler, ScalarCase, sample_scalar_case
from .suites import SUITES, run_suite

USAGE_ERRORS = (ConfigError, ParameterCollision, SingularParameters, BackendMismatch, ShapeMismatch, TooManyVariables)

DEFAULTS = {
    "backend": RATIONAL,
    "seed": 0,
    "N": None,
    "a": 1,
    "b": 0,
    "n": None,
    "method": "both",
    "suite": "all",
    "count": None,
    "kind": "KF",
    "timing": True,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--backend", choices=BACKENDS, default=d)
    p.add_argument("--seed", type=int, default=d)
    p.add_argument("--config", default=d, help="JSON or TOML file with default values")
    p.add_argument("--json-out", dest="json_out", default=d, metavar="PATH")
    p.add_argument("--no-timing", dest="timing", action="store_const", const=False, default=d,
                   help="report elapsed_ms as null (byte-stable output)")


def _params(p):
    for name in ("q", "xi", "t", "s", "tau", "sigma", "x", "y"):
        p.add_argument(f"--{name}", default=None, help="comma-separated rationals such as 3/7,-2")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gl3bethe", description="Exact gl3 Bethe vectors and scalar products.")
    _global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="run identity suites")
    v.add_argument("--suite", choices=["all", *SUITES], default=None)
    v.add_argument("--N", type=int, default=None, help="restrict chain-dependent suites to this length")
    v.add_argument("--n", type=int, default=None, help="restrict kernel suites to this size")
    v.add_argument("--count", type=int, default=None, help="points per suite item")

    for name, text in (("bethe", "Bethe vector components"), ("dual", "dual Bethe vector components")):
        c = sub.add_parser(name, parents=[common], help=text)
        c.add_argument("--a", type=int, default=None)
        c.add_argument("--b", type=int, default=None)
        c.add_argument("--N", type=int, default=None)
        _params(c)

    sc = sub.add_parser("scalar", parents=[common], help="direct and kernel scalar products")
    sc.add_argument("--a", type=int, default=None)
    sc.add_argument("--b", type=int, default=None)
    sc.add_argument("--N", type=int, default=None)
    sc.add_argument("--method", choices=["direct", "kernel", "both"], default=None)
    _params(sc)

    iz = sub.add_parser("izergin", parents=[common], help="Izergin determinant identity")
    iz.add_argument("--n", type=int, default=None)
    _params(iz)

    k = sub.add_parser("kernels", parents=[common], help="evaluate Y, Z, K_F, K_E")
    k.add_argument("--kind", choices=["Y", "Z", "KF", "KE", "example"], default=None)
    k.add_argument("--a", type=int, default=None)
    k.add_argument("--b", type=int, default=None)
    _params(k)
    return parser


def load_config(path: str | None) -> dict:
    if not path:
        return {}
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    try:
        if p.suffix == ".toml":
            data = tomllib.loads(text)
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a table of settings")
    return data


def resolve(args: argparse.Namespace) -> dict:
    """Defaults, then config file, then flags."""
    cfg = dict(DEFAULTS)
    file_cfg = load_config(getattr(args, "config", None))
    unknown = set(file_cfg) - set(DEFAULTS) - {"q", "xi", "t", "s", "tau", "sigma", "x", "y", "json_out"}
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    cfg.update(file_cfg)
    for k, v in vars(args).items():
        if v is not None and k != "config":
            cfg[k] = v
    if cfg["backend"] not in BACKENDS:
        raise ConfigError(f"backend must be one of {BACKENDS}")
    for key in ("N", "a", "b", "n"):
        if cfg[key] is None:
            continue
        if not isinstance(cfg[key], int) or isinstance(cfg[key], bool) or cfg[key] < 0:
            raise ConfigError(f"{key} must be a nonnegative integer")
    return cfg


def _size(cfg: dict, key: str, default: int) -> int:
    return default if cfg.get(key) is None else cfg[key]


def _parse_list(cfg: dict, key: str):
    raw = cfg.get(key)
    if raw is None:
        return None
    items = raw.split(",") if isinstance(raw, str) else list(raw)
    try:
        return [scalar(str(x).strip(), cfg["backend"]) for x in items if str(x).strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad value in --{key}: {raw!r}") from exc


def _chain(cfg: dict, sampler: Sampler) -> ChainSpec:
    q, xi = _parse_list(cfg, "q"), _parse_list(cfg, "xi")
    if q is None and xi is None:
        return sampler.chain(_size(cfg, "N", 1))
    if q is None or xi is None or len(q) != 1:
        raise ConfigError("give --q (one value) and --xi together, or neither")
    return ChainSpec(q[0], xi)


def _family(cfg, key, size, sampler):
    vals = _parse_list(cfg, key)
    if vals is None:
        return sampler.values(size)
    if len(vals) != size:
        raise ConfigError(f"--{key} needs {size} values, got {len(vals)}")
    return vals


def _scalar_case(cfg: dict, sampler: Sampler) -> ScalarCase:
    a, b = cfg["a"], cfg["b"]
    explicit = any(cfg.get(k) is not None for k in ("q", "xi", "t", "s", "tau", "sigma"))
    if not explicit:
        return sample_scalar_case(sampler, a, b, _size(cfg, "N", 1))
    chain = _chain(cfg, sampler)
    return ScalarCase(
        chain,
        tuple(_family(cfg, "tau", a, sampler)),
        tuple(_family(cfg, "sigma", b, sampler)),
        tuple(_family(cfg, "t", a, sampler)),
        tuple(_family(cfg, "s", b, sampler)),
    )


def _ms(start) -> int | None:
    return int((time.perf_counter() - start) * 1000)


# -- commands ---------------------------------------------------------------------


def cmd_verify(cfg: dict, sampler: Sampler) -> tuple[int, dict]:
    names = list(SUITES) if cfg["suite"] == "all" else [cfg["suite"]]
    options = {}
    if cfg.get("count") is not None:
        options["count"] = cfg["count"]
    if cfg.get("N") is not None:
        options["sites"] = (cfg["N"],)
    if cfg.get("n") is not None:
        options["sizes"] = (cfg["n"],)
    checks = []
    for name in names:
        if name == "ypoles" and sampler.backend != RATIONAL:
            continue
        checks.extend(run_suite(name, sampler, **options))
    report = {
        "command": "verify",
        "backend": sampler.backend,
        "seed": sampler.seed,
        "checks": [c.to_json(cfg["timing"]) for c in checks],
        "pass": all(c.passed for c in checks),
    }
    return (0 if report["pass"] else 1), report


def _vector_report(cmd, cfg, sampler, build):
    a, b = cfg["a"], cfg["b"]
    chain = _chain(cfg, sampler)
    key_t, key_s = ("t", "s") if cmd == "bethe" else ("tau", "sigma")
    t = _family(cfg, key_t, a, sampler)
    s = _family(cfg, key_s, b, sampler)
    start = time.perf_counter()
    vec = build(chain, t, s)
    return 0, {
        "command": cmd,
        "q": to_json(chain.q),
        "xi": [to_json(x) for x in chain.xi],
        key_t: [to_json(x) for x in t],
        key_s: [to_json(x) for x in s],
        "vector": vec.to_json(),
        "elapsed_ms": _ms(start) if cfg["timing"] else None,
    }


def cmd_bethe(cfg, sampler):
    return _vector_report("bethe", cfg, sampler, bethe_vector)


def cmd_dual(cfg, sampler):
    return _vector_report("dual", cfg, sampler, dual_bethe_vector)


def cmd_scalar(cfg: dict, sampler: Sampler) -> tuple[int, dict]:
    case = _scalar_case(cfg, sampler)
    method = cfg["method"]
    start = time.perf_counter()
    direct = kernel = norm = None
    passed, nodes = None, None
    ch, args = case.chain, (case.tau, case.sigma, case.t, case.s)
    if method == "both":
        c = compare_scalar_products(ch, *args)
        direct, kernel, norm, passed, nodes = c.direct, c.kernel, c.normalization, c.passed, c.nodes
    elif method == "direct":
        direct = direct_scalar_product(ch, *args)
    else:
        res = scalar_product_kernel(ch, *args)
        kernel, nodes = res.value, res.nodes
        norm = normalization(ch, *args)
    report = {
        "direct": None if direct is None else to_json(direct),
        "kernel": None if kernel is None else to_json(kernel),
        "normalization": None if norm is None else to_json(norm),
        "pass": passed,
        "residue_tree_nodes": nodes,
        "elapsed_ms": _ms(start) if cfg["timing"] else None,
        "params": case.to_json(),
    }
    return (1 if passed is False else 0), report


def cmd_izergin(cfg: dict, sampler: Sampler) -> tuple[int, dict]:
    n = _size(cfg, "n", 2)
    q = _parse_list(cfg, "q")
    q = q[0] if q else sampler.value()
    t = _family(cfg, "t", n, sampler)
    x = _family(cfg, "x", n, sampler)
    start = time.perf_counter()
    residual = check_izergin_identity(q, t, x)
    ok = is_zero(residual) if sampler.backend == RATIONAL else abs(residual) <= 1e-9
    report = {
        "q": to_json(q),
        "t": [to_json(v) for v in t],
        "x": [to_json(v) for v in x],
        "sym_t": to_json(izergin_sym_t(q, t, x)),
        "sym_x": to_json(izergin_sym_x(q, t, x)),
        "determinant": to_json(izergin_determinant(q, t, x)),
        "residual": to_json(residual if not isinstance(residual, float) else complex(residual)),
        "pass": ok,
        "elapsed_ms": _ms(start) if cfg["timing"] else None,
    }
    return (0 if ok else 1), report


def cmd_kernels(cfg: dict, sampler: Sampler) -> tuple[int, dict]:
    kind, a, b = cfg["kind"], cfg["a"], cfg["b"]
    q = _parse_list(cfg, "q")
    q = q[0] if q else sampler.value()
    if kind in ("Y", "Z"):
        t, x = _family(cfg, "t", a, sampler), _family(cfg, "x", a, sampler)
        value = (kernel_Y if kind == "Y" else kernel_Z)(q, t, x)
        point = {"t": t, "x": x}
    elif kind == "example":
        t, s, x, y = (_family(cfg, k, 1, sampler) for k in ("t", "s", "x", "y"))
        value = kernel_KF_example(q, t[0], s[0], x[0], y[0])
        point = {"t": t, "s": s, "x": x, "y": y}
    else:
        k1, k2 = ("t", "s") if kind == "KF" else ("tau", "sigma")
        u, w = _family(cfg, k1, a, sampler), _family(cfg, k2, b, sampler)
        x, y = _family(cfg, "x", a, sampler), _family(cfg, "y", b, sampler)
        value = (kernel_KF if kind == "KF" else kernel_KE)(q, u, w, x, y)
        point = {k1: u, k2: w, "x": x, "y": y}
    report = {"kind": kind, "q": to_json(q), **{k: [to_json(v) for v in vs] for k, vs in point.items()}}
    report["value"] = to_json(value)
    return 0, report


COMMANDS = {
    "verify": cmd_verify,
    "bethe": cmd_bethe,
    "dual": cmd_dual,
    "scalar": cmd_scalar,
    "izergin": cmd_izergin,
    "kernels": cmd_kernels,
}


def _emit(report: dict, path: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=False) + "\n"
    if path:
        Path(path).write_text(text)
    sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a command is required")
        cfg = resolve(args)
        sampler = Sampler(cfg["seed"], cfg["backend"])
        code, report = COMMANDS[args.command](cfg, sampler)
    except UsageError as exc:
        print(f"error: UsageError: {exc}", file=sys.stderr)
        return 2
    except USAGE_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except Gl3BetheError as exc:
        print(f"check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _emit(report, cfg.get("json_out"))
    if code:
        print("check failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
