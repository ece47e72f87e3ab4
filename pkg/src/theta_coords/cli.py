"""The ``theta`` command line.

Every command reads an optional JSON document (``--in``, default none)
shaped like ``{"params": {...}, "input": ..., "ring": {...},
"specialization": {...}}``; flags override the document.  Output is a
single JSON object ``{"result": ..., "provenance": {...}}`` written with
sorted keys, so equal jobs give equal bytes.

Exit codes: 0 success, 1 malformed input, 2 domain error (the output then
carries an ``error`` object instead of ``result``).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import SchemaError, ThetaError, TooLarge
from .fields import GF, FiniteField, Specialization
from .linalg import Matrix
from .rallis import apply_rallis, build_rallis, invariant_preimage
from .scalars import RingContext, vpow
from .serialize import (
    element_from_json,
    field_from_json,
    invariants_from_json,
    invariants_to_json,
    poly_from_json,
    poly_to_json,
    ring_from_json,
    ring_to_json,
    support_from_json,
    support_to_json,
    tame_from_json,
    tame_to_json,
)
from .strata import enumerate_strata, orbit_transitivity_check, prime_power
from .supports import support_equal, theta_support, trivial_rep_support, twist_support
from .tame import (
    _sqrt_q,
    all_words,
    check_tame,
    l_theta,
    pullback_coefficients,
    satake_crosscheck,
    scalar_blocks,
    word_invariants,
)
from .verify import SCALES, verify_all

WORD_CAP = 12


class Job:
    """Resolved inputs of one invocation."""

    def __init__(self, command, params, data, ring, spec_raw, seed, scale):
        self.command = command
        self.params = params
        self.input = data
        self.ring = ring
        self.spec_raw = spec_raw
        self.seed = seed
        self.scale = scale

    def param(self, key, default=None, required=False):
        if key in self.params:
            return self.params[key]
        if required:
            raise SchemaError(f"{self.command}: missing parameter {key!r}")
        return default

    def int_param(self, key, default=None, required=False):
        x = self.param(key, default, required)
        if x is None:
            return None
        if isinstance(x, bool) or not isinstance(x, int):
            raise SchemaError(f"parameter {key!r} must be an integer")
        return x

    def need_input(self):
        if self.input is None:
            raise SchemaError(f"{self.command}: an input document is required")
        return self.input

    def need_ring(self) -> RingContext:
        if self.ring is None:
            raise SchemaError(f"{self.command}: --ring p,f is required")
        return self.ring

    def spec(self, ctx=None):
        """The specialization, built lazily against ``ctx`` (or the job ring)."""
        if self.spec_raw is None:
            return None
        ctx = ctx or self.need_ring()
        ell, v_image, ext = self.spec_raw
        if v_image == "auto":
            return Specialization.auto(ctx, ell)
        target = GF(ell, 2) if ext or isinstance(v_image, tuple) else GF(ell)
        return Specialization(ctx, target, v_image)


# -- argument parsing --

def parse_ring(text) -> RingContext:
    if isinstance(text, dict):
        return ring_from_json(text)
    parts = str(text).split(",")
    try:
        nums = [int(x) for x in parts]
    except ValueError as exc:
        raise SchemaError(f"--ring expects p[,f], got {text!r}") from exc
    if len(nums) not in (1, 2):
        raise SchemaError(f"--ring expects p[,f], got {text!r}")
    try:
        return RingContext(*nums)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _v_image(x):
    if x == "auto":
        return "auto"
    if isinstance(x, list) and len(x) == 2:
        return (int(x[0]), int(x[1]))
    if isinstance(x, str) and ":" in x:
        a, b = x.split(":")
        return (int(a), int(b))
    if isinstance(x, bool):
        raise ValueError
    return int(x)


def parse_spec(text):
    """``ell,v_image[,ext]`` or the JSON object ``{ell, v_image, extension}``."""
    try:
        if isinstance(text, dict):
            ell = int(text["ell"])
            v = _v_image(text.get("v_image", "auto"))
            ext = bool(text.get("extension", False))
        else:
            parts = str(text).split(",")
            if len(parts) not in (2, 3):
                raise ValueError
            ell = int(parts[0])
            v = _v_image(parts[1].strip())
            ext = len(parts) == 3 and parts[2].strip().lower() in ("1", "ext", "true", "yes")
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"--spec expects ell,v_image[,ext], got {text!r}") from exc
    return ell, v, ext


class _Parser(argparse.ArgumentParser):
    # usage errors are malformed input, not domain errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="theta", description="Theta correspondence in coordinates.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--ring", help="residual characteristic and degree, p[,f]")
    ap.add_argument("--spec", help="ell,v_image[,ext]; v_image is an integer, a:b in F_ell^2, or auto")
    ap.add_argument("--in", dest="infile", help="input JSON document (- for stdin)")
    ap.add_argument("--out", help="output file (default stdout)")
    ap.add_argument("--params", help="JSON object merged over the document's params")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--scale", choices=sorted(SCALES))
    return ap


def load_job(args) -> Job:
    doc = {}
    if args.infile:
        try:
            if args.infile == "-":
                doc = json.load(sys.stdin)
            else:
                with open(args.infile, encoding="utf-8") as fh:
                    doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise SchemaError(f"cannot read input: {exc}") from exc
        if not isinstance(doc, dict):
            raise SchemaError("input document must be a JSON object")
        if "command" in doc and doc["command"] != args.command:
            raise SchemaError(f"document is for {doc['command']!r}, not {args.command!r}")
    params = doc.get("params") or {}
    if not isinstance(params, dict):
        raise SchemaError("params must be a JSON object")
    params = dict(params)
    if args.params:
        try:
            extra = json.loads(args.params)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"--params is not JSON: {exc}") from exc
        if not isinstance(extra, dict):
            raise SchemaError("--params must be a JSON object")
        params.update(extra)
    ring = args.ring or doc.get("ring")
    spec = args.spec or doc.get("specialization")
    return Job(
        args.command,
        params,
        doc.get("input"),
        parse_ring(ring) if ring is not None else None,
        parse_spec(spec) if spec is not None else None,
        args.seed if args.seed is not None else doc.get("seed", 0),
        args.scale or doc.get("scale", "small"),
    )


# -- commands --

def cmd_rallis_apply(job):
    n = job.int_param("n", required=True)
    m = job.int_param("m", required=True)
    f = poly_from_json(job.need_input())
    return poly_to_json(apply_rallis(build_rallis(n, m), f))


def cmd_rallis_preimage(job):
    n = job.int_param("n", required=True)
    g = poly_from_json(job.need_input())
    f = invariant_preimage(g, n, job.int_param("bound"), job.int_param("retries", 4))
    return poly_to_json(f)


def cmd_scs_theta(job):
    n = job.int_param("n", required=True)
    return support_to_json(theta_support(support_from_json(job.need_input()), n))


def cmd_scs_congruence(job):
    """Compare two supports after specializing; defaults to 1_n against |.| 1_n."""
    ctx = job.need_ring()
    spec = job.spec(ctx)
    if job.input is not None:
        doc = job.input
        if not isinstance(doc, dict) or "left" not in doc or "right" not in doc:
            raise SchemaError("scs-congruence input must be {left, right}")
        left, right = support_from_json(doc["left"]), support_from_json(doc["right"])
        return {"equal": support_equal(left, right, spec)}
    n = job.int_param("n", required=True)
    base = trivial_rep_support(n)
    twisted = twist_support(base, vpow(2))
    out = {"equal": support_equal(base, twisted, spec), "n": n, "q": ctx.q}
    if spec is not None:
        ell = spec.target.characteristic
        out["ell"] = ell
        out["ell_divides_q^n-1"] = (ctx.q**n - 1) % ell == 0
    return out


def _tame(job):
    return tame_from_json(job.need_input(), job.ring)


def cmd_lparam_check(job):
    return {"tame": check_tame(_tame(job))}


def cmd_lparam_map(job):
    P = _tame(job)
    n = job.int_param("n", required=True)
    return tame_to_json(l_theta(P, n, job.spec(P.ctx)))


def _words(job):
    if "word" in job.params:
        words = [job.params["word"]]
    elif "words" in job.params:
        words = job.params["words"]
        if not isinstance(words, list):
            raise SchemaError("words must be a list")
    else:
        words = list(all_words(job.int_param("max_len", required=True)))
    cap = job.int_param("word_cap", WORD_CAP)
    for w in words:
        if not isinstance(w, str) and not isinstance(w, tuple):
            raise SchemaError(f"word {w!r} must be a string over F, S")
        if len(w) > cap:
            raise TooLarge(f"word length {len(w)} exceeds cap {cap}")
    return words


def cmd_lparam_invariants(job):
    P = _tame(job)
    F = P.field
    try:
        words = _words(job)
        vecs = [word_invariants(P, w) for w in words]
    except ValueError as exc:
        if isinstance(exc, ThetaError):
            raise
        raise SchemaError(str(exc)) from exc
    return [invariants_to_json(iv, F) for iv in vecs]


def cmd_lparam_pullback(job):
    pushed, F = invariants_from_json(job.need_input())
    alpha1 = job.int_param("alpha1")
    if "scalar_blocks" in job.params:
        blocks = [element_from_json(x, F) for x in job.params["scalar_blocks"]]
    else:
        m = job.int_param("m", required=True)
        n = pushed.dim
        ctx = job.ring or RingContext(2)
        v = _sqrt_q(F, job.spec(ctx) if job.spec_raw else None)
        blocks = scalar_blocks(m, n, v)
    out = pullback_coefficients(pushed, alpha1, blocks)
    return invariants_to_json(out, F)


def cmd_strata(job):
    n = job.int_param("n", required=True)
    m = job.int_param("m", required=True)
    q = job.int_param("q", required=True)
    try:
        prime_power(q)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    report = enumerate_strata(n, m, q).as_dict()
    if job.param("transitivity", False):
        report["transitive"] = [orbit_transitivity_check(n, m, k, q) for k in range(min(n, m) + 1)]
    return report


def cmd_crosscheck(job):
    """Input ``{field, diag: [...]}``; ``field`` defaults to Q(v)."""
    doc = job.need_input()
    if not isinstance(doc, dict) or "diag" not in doc:
        raise SchemaError("crosscheck input must be {field?, diag}")
    F = field_from_json(doc.get("field", {"kind": "qv"}))
    n = job.int_param("n", required=True)
    diag = [element_from_json(x, F) for x in doc["diag"]]
    ctx = job.ring or RingContext(2)
    spec = job.spec(ctx) if isinstance(F, FiniteField) else None
    return {"agree": satake_crosscheck(Matrix.diag(F, diag), n, ctx, spec)}


def cmd_verify_all(job):
    if job.scale not in SCALES or isinstance(job.seed, bool) or not isinstance(job.seed, int):
        raise SchemaError("verify-all needs an integer seed and scale small|full")
    return verify_all(job.seed, job.scale)


COMMANDS = {
    "rallis-apply": cmd_rallis_apply,
    "rallis-preimage": cmd_rallis_preimage,
    "scs-theta": cmd_scs_theta,
    "scs-congruence": cmd_scs_congruence,
    "lparam-check": cmd_lparam_check,
    "lparam-map": cmd_lparam_map,
    "lparam-invariants": cmd_lparam_invariants,
    "lparam-pullback": cmd_lparam_pullback,
    "strata": cmd_strata,
    "crosscheck": cmd_crosscheck,
    "verify-all": cmd_verify_all,
}


def _spec_json(job):
    if job.spec_raw is None:
        return None
    ell, v, ext = job.spec_raw
    return {"ell": ell, "v_image": list(v) if isinstance(v, tuple) else v, "extension": ext}


def run(job: Job) -> tuple[dict, int]:
    """Execute a job; returns the output document and the exit code."""
    prov = {
        "command": job.command,
        "ring": ring_to_json(job.ring) if job.ring else None,
        "specialization": _spec_json(job),
        "toolkit-version": __version__,
    }
    try:
        result = COMMANDS[job.command](job)
    except SchemaError as exc:
        return {"error": {"type": "SchemaError", "message": str(exc)}, "provenance": prov}, 1
    except ThetaError as exc:
        return {"error": {"type": type(exc).__name__, "message": str(exc)}, "provenance": prov}, 2
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        return {"error": {"type": "SchemaError", "message": str(exc)}, "provenance": prov}, 1
    code = 0
    if job.command == "verify-all" and not result["ok"]:
        code = 2
    return {"result": result, "provenance": prov}, code


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = load_job(args)
    except SchemaError as exc:
        out = {"error": {"type": "SchemaError", "message": str(exc)}, "provenance": {"command": args.command}}
        code = 1
    else:
        out, code = run(job)
    text = dumps(out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
