"""Command-line interface: problem files in, JSON or text reports out.

Exit codes: 0 success, 2 validation failure, 3 negative answer that rests on
a sampled (lower-bound) wedge space, 4 malformed input.
"""

import argparse
import json
import sys
from importlib import resources

import jsonschema

from .exactla import Matrix, Subspace
from .fieldtower import Embedding, FieldTower, TowerError, validate_embedding
from .finitefield import PrimeField
from .literal import LiteralError
from .modalg import MatrixAlgebra, invariance_witness
from .paramspace import chart_locate, classify_point, ff_enumerate, find_separating_element, tangent_space
from .twosided import (
    ClassificationError,
    EmbeddingOrbit,
    TwoSidedStructure,
    classify,
    classify_product_point,
    theorem612_check,
    validate_phi,
)
from .wedgeinv import ChartGridError, lambda_A_chart_grid, lambda_A_sampled

__all__ = ["main", "run", "load_problem", "Problem", "COMMANDS", "DEFAULT_SEED"]

DEFAULT_SEED = 0xB16A55
SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_HONESTY = 3
EXIT_MALFORMED = 4

STATUS = {
    EXIT_OK: "ok",
    EXIT_VALIDATION: "validation_failure",
    EXIT_HONESTY: "honesty_flagged",
    EXIT_MALFORMED: "malformed_input",
}

COMMANDS = (
    "check-invariant",
    "check-generated",
    "check-h",
    "lambda-a",
    "tangent",
    "charts",
    "classify",
    "separate",
    "oracle-ff",
    "verify-paper",
)

BUILTIN_PROBLEMS = ("vlambda2.json", "galois.json", "ff_companion.json", "ff_identity.json")


class MalformedInput(Exception):
    pass


class ValidationFailure(Exception):
    pass


def _schema(name):
    return json.loads(resources.files("invgrass.data").joinpath(name).read_text())


def problem_schema():
    return _schema("problem.schema.json")


def report_schema():
    return _schema("report.schema.json")


def _json_path(error):
    path = "$"
    for p in error.absolute_path:
        path += f"[{p}]" if isinstance(p, int) else f".{p}"
    return path


class Problem:
    """A parsed and cross-checked problem file."""

    def __init__(self, data):
        errors = sorted(
            jsonschema.Draft202012Validator(problem_schema()).iter_errors(data),
            key=lambda e: list(map(str, e.absolute_path)),
        )
        if errors:
            e = errors[0]
            raise MalformedInput(f"schema violation at {_json_path(e)}: {e.message}")
        self.data = data
        self.name = data.get("name")
        try:
            self._build()
        except (LiteralError, TowerError, ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(str(exc)) from None
        self._wedges = {}
        self._classification = None

    def _build(self):
        data = self.data
        fspec = data["field"]
        if "prime" in fspec:
            self.K = PrimeField(fspec["prime"])
            if data.get("extensions"):
                raise ValueError("extensions are only supported over number fields")
        else:
            self.K = FieldTower(fspec["levels"], fspec.get("base", 0))
        self.fields = {"K": self.K}
        for name, ext in (data.get("extensions") or {}).items():
            if name in self.fields:
                raise ValueError(f"field name {name!r} is reserved or repeated")
            f = self.K
            for sym, poly in ext["levels"]:
                f = f.extend(sym, poly)
            self.fields[name] = f
        self.structure = None
        if "phi" in data:
            images = {s: self._matrix(rows, self.K) for s, rows in data["phi"].items()}
            self.structure = TwoSidedStructure(self.K, images, name=self.name)
            self.algebra = self.structure.algebra()
        else:
            self.algebra = MatrixAlgebra([self._matrix(g, self.K) for g in data["algebra"]["generators"]], self.K)
        self.n = self.algebra.n
        self.blocks = data.get("blocks")
        self.default_m = data.get("m")
        self.subspaces = {}
        for name, sp in (data.get("subspaces") or {}).items():
            fld = self._field(sp.get("field", "K"), f"subspaces.{name}")
            rows = [[self._element(x, fld) for x in r] for r in sp["basis"]]
            if any(len(r) != self.n for r in rows):
                raise ValueError(f"subspace {name!r} rows must have length {self.n}")
            S = Subspace.span(rows, fld, self.n)
            if S.dim != len(rows):
                raise ValueError(f"subspace {name!r} basis is linearly dependent")
            self.subspaces[name] = S
        self.embeddings = {}
        for name, emb in (data.get("embeddings") or {}).items():
            target = self._field(emb.get("target", "K"), f"embeddings.{name}")
            images = {s: self._element(v, target) for s, v in emb["images"].items()}
            self.embeddings[name] = Embedding(self.K, target, images, name)
        self.orbit_names = data.get("orbits") or {}
        for name, members in self.orbit_names.items():
            for e in members:
                if e not in self.embeddings:
                    raise ValueError(f"orbit {name!r} refers to unknown embedding {e!r}")
        self.certificates = {}
        for name, polys in (data.get("certificates") or {}).items():
            self.certificates[name] = [self.K.parse_poly(p) for p in polys]
        self.tasks = data.get("tasks") or []
        for t in self.tasks:
            for key in ("subspace",):
                if key in t and t[key] not in self.subspaces:
                    raise ValueError(f"task refers to unknown subspace {t[key]!r}")
            for e in t.get("embeddings", []):
                if e not in self.embeddings:
                    raise ValueError(f"task refers to unknown embedding {e!r}")
            if "simple" in t and t["simple"] not in self.orbit_names:
                raise ValueError(f"task refers to unknown orbit {t['simple']!r}")
            if "certificates" in t and t["certificates"] not in self.certificates:
                raise ValueError(f"task refers to unknown certificates {t['certificates']!r}")

    def _field(self, name, where):
        if name not in self.fields:
            raise ValueError(f"{where}: unknown field {name!r}")
        return self.fields[name]

    @staticmethod
    def _element(x, field):
        return field(x) if isinstance(x, int) else field.parse(x)

    def _matrix(self, rows, field):
        return Matrix([[self._element(x, field) for x in r] for r in rows], field)

    # derived data -----------------------------------------------------------

    def subspace(self, name):
        if name is None:
            raise MalformedInput("this command needs --subspace")
        if name not in self.subspaces:
            raise MalformedInput(f"unknown subspace {name!r}")
        return self.subspaces[name]

    def orbits(self):
        out = {}
        for name, members in self.orbit_names.items():
            embs = [self.embeddings[e] for e in members]
            for e in embs:
                rep = validate_embedding(e)
                if not rep.ok:
                    raise ValidationFailure(f"embedding {e.name}: {'; '.join(rep.failures)}")
            try:
                out[name] = EmbeddingOrbit.from_embeddings(embs, name)
            except ValueError as exc:
                raise ValidationFailure(f"orbit {name}: {exc}") from None
        return out

    def wedge(self, m, method="auto", seed=DEFAULT_SEED, rounds=8):
        key = (m, method, seed, rounds)
        if key in self._wedges:
            return self._wedges[key]
        if method == "auto":
            if getattr(self.K, "is_finite", False):
                method = "enumerate"
            elif self.blocks is not None:
                method = "chart"
            else:
                method = "sampled"
        if method == "enumerate":
            if not getattr(self.K, "is_finite", False):
                raise MalformedInput("enumeration needs a prime field")
            W = ff_enumerate(self.algebra, m, charts=False).wedge
        elif method == "chart":
            l = self.blocks if self.blocks is not None else None
            try:
                W = lambda_A_chart_grid(self.algebra, m, l)
            except ChartGridError as exc:
                raise ValidationFailure(str(exc)) from None
            except ValueError as exc:
                raise MalformedInput(str(exc)) from None
        else:
            W = lambda_A_sampled(self.algebra, m, seed=seed, rounds=rounds)
        self._wedges[key] = W
        return W

    def classification(self, cert_name=None):
        if self.structure is None:
            raise MalformedInput("classification needs a two-sided problem (phi)")
        if self._classification is not None and cert_name is None:
            return self._classification
        rep = validate_phi(self.structure)
        if not rep.ok:
            raise ValidationFailure("phi: " + "; ".join(rep.failures))
        if cert_name is None:
            if len(self.certificates) != 1:
                raise MalformedInput("name the certificate set to use (--certificates)")
            cert_name = next(iter(self.certificates))
        try:
            c = classify(self.structure, self.certificates[cert_name], self.orbits())
        except ClassificationError as exc:
            raise ValidationFailure(str(exc)) from None
        self._classification = c
        return c


def load_problem(source):
    """Parse a problem from a path, file object, JSON text or dict."""
    if isinstance(source, dict):
        data = source
    else:
        try:
            if hasattr(source, "read"):
                data = json.load(source)
            else:
                with open(source, encoding="utf-8") as fh:
                    data = json.load(fh)
        except OSError as exc:
            raise MalformedInput(f"cannot read problem file: {exc}") from None
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"problem file is not valid JSON: {exc}") from None
    return Problem(data)


# commands -------------------------------------------------------------------


def _strings(v):
    return [str(x) for x in v]


def _m_for(problem, task, default=None):
    m = task.get("m", problem.default_m if default is None else default)
    if m is None:
        raise MalformedInput("this command needs --m (or an 'm' entry in the problem)")
    return m


def cmd_check_invariant(problem, task, seed):
    M = problem.subspace(task.get("subspace"))
    wit = invariance_witness(M, problem.algebra)
    out = {"subspace": task["subspace"], "invariant": wit is None}
    if wit is not None:
        out["witness"] = {"row": wit[0], "generator": wit[1], "image": _strings(wit[2])}
    return out, set()


def _verdict(problem, task, seed):
    M = problem.subspace(task.get("subspace"))
    W = problem.wedge(M.dim, task.get("method", "auto"), seed, task.get("rounds", 8))
    return M, W, classify_point(M, problem.algebra, W)


def cmd_check_generated(problem, task, seed):
    _, _, v = _verdict(problem, task, seed)
    out = {
        "subspace": task["subspace"],
        "is_G": v.is_G,
        "g_provenance": v.g_provenance,
        "honesty_flag": v.honesty_flag,
    }
    if "G" in v.witnesses:
        out["witness"] = v.witnesses["G"]
    return out, {"honesty"} if v.honesty_flag else set()


def cmd_check_h(problem, task, seed):
    _, _, v = _verdict(problem, task, seed)
    out = dict(v.to_dict(), subspace=task["subspace"])
    return out, {"honesty"} if v.honesty_flag else set()


def cmd_lambda_a(problem, task, seed):
    m = _m_for(problem, task)
    W = problem.wedge(m, task.get("method", "auto"), seed, task.get("rounds", 8))
    return W.report(), set()


def cmd_tangent(problem, task, seed):
    E = problem.subspace(task.get("subspace"))
    W = problem.wedge(E.dim, task.get("method", "auto"), seed, task.get("rounds", 8))
    try:
        rep = tangent_space(E, problem.algebra, W)
    except ValueError as exc:
        flags = {"honesty"} if W.provenance == "sampled_lower_bound" else {"validation"}
        return {"subspace": task["subspace"], "error": str(exc)}, flags
    return dict(rep.to_dict(), subspace=task["subspace"]), set()


def cmd_charts(problem, task, seed):
    names = [task["subspace"]] if task.get("subspace") else sorted(problem.subspaces)
    results = []
    for name in names:
        M = problem.subspaces[name]
        try:
            loc = chart_locate(M, problem.algebra, problem.blocks)
        except ValueError as exc:
            raise MalformedInput(str(exc)) from None
        entry = {"subspace": name, "chart": None}
        if loc is not None:
            entry.update(loc.to_dict())
        results.append(entry)
    if task.get("subspace"):
        return results[0], set()
    return {"charts": results}, set()


def cmd_classify(problem, task, seed):
    c = problem.classification(task.get("certificates"))
    out = c.to_dict()
    if task.get("subspace"):
        M = problem.subspace(task["subspace"])
        v = classify_product_point(c, M, task.get("rank"), seed=seed)
        out["subspace"] = task["subspace"]
        out["product"] = v.to_dict()
        flags = {"honesty"} if v.honesty_flag else set()
        if task.get("simple"):
            orbit = problem.orbits()[task["simple"]]
            try:
                out["theorem612"] = theorem612_check(problem.structure, M, orbit).to_dict()
            except ValueError as exc:
                out["theorem612"] = {"ok": False, "error": str(exc)}
        return out, flags
    return out, set()


def cmd_separate(problem, task, seed):
    names = task.get("embeddings") or []
    if not names or not task.get("multiset"):
        raise MalformedInput("separate needs --embeddings and --multiset")
    embs = [problem.embeddings[n] for n in names]
    for e in embs:
        rep = validate_embedding(e)
        if not rep.ok:
            raise ValidationFailure(f"embedding {e.name}: {'; '.join(rep.failures)}")
    try:
        res = find_separating_element(embs, task["multiset"])
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    out = dict(res.to_dict(), separated=res.lhs != res.rhs, embeddings=names, multiset=task["multiset"])
    return out, set()


def cmd_oracle_ff(problem, task, seed):
    if not getattr(problem.K, "is_finite", False):
        raise MalformedInput("oracle-ff needs a problem over a prime field")
    m = _m_for(problem, task)
    try:
        rep = ff_enumerate(problem.algebra, m)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    return rep.to_dict(), set()


HANDLERS = {
    "check-invariant": cmd_check_invariant,
    "check-generated": cmd_check_generated,
    "check-h": cmd_check_h,
    "lambda-a": cmd_lambda_a,
    "tangent": cmd_tangent,
    "charts": cmd_charts,
    "classify": cmd_classify,
    "separate": cmd_separate,
    "oracle-ff": cmd_oracle_ff,
}


def _matches(expect, got):
    if isinstance(expect, dict):
        return isinstance(got, dict) and all(k in got and _matches(v, got[k]) for k, v in expect.items())
    return expect == got


def _public_task(task):
    return {k: v for k, v in task.items() if k != "expect"}


def _run_task(problem, task, seed):
    handler = HANDLERS[task["command"]]
    result, flags = handler(problem, task, seed)
    entry = {"task": _public_task(task), "result": result}
    if "expect" in task:
        ok = _matches(task["expect"], result)
        entry["check"] = "pass" if ok else "fail"
        if not ok:
            flags = flags | {"validation"}
    return entry, flags


def _exit_for(flags):
    if "validation" in flags:
        return EXIT_VALIDATION
    if "honesty" in flags:
        return EXIT_HONESTY
    return EXIT_OK


def _builtin_problems():
    base = resources.files("invgrass.data").joinpath("problems")
    for name in BUILTIN_PROBLEMS:
        yield name, json.loads(base.joinpath(name).read_text())


def verify_paper(seed=DEFAULT_SEED):
    results = []
    flags = set()
    for name, data in _builtin_problems():
        problem = Problem(data)
        for task in problem.tasks:
            try:
                entry, f = _run_task(problem, task, seed)
            except ValidationFailure as exc:
                entry, f = {"task": _public_task(task), "result": {"error": str(exc)}, "check": "fail"}, {"validation"}
            entry["task"] = dict(entry["task"], problem=name)
            if entry.get("check") == "fail":
                f = f | {"validation"}
            results.append(entry)
            flags |= f
    return results, flags


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInput(message)


def _seed(text):
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _rank(text):
    out = {}
    for part in text.split(","):
        name, _, q = part.partition("=")
        if not name or not q.isdigit():
            raise argparse.ArgumentTypeError(f"rank entries look like name=q, got {part!r}")
        out[name] = int(q)
    return out


def _int_list(text):
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser():
    p = _Parser(prog="invgrass", description="Invariant subspace parameter spaces over number fields.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--problem", help="problem file (JSON)")
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--m", type=int)
    p.add_argument("--subspace")
    p.add_argument("--method", choices=["auto", "chart", "sampled", "enumerate"])
    p.add_argument("--rounds", type=int)
    p.add_argument("--certificates")
    p.add_argument("--rank", type=_rank, help="expected rank as name=q[,name=q...]")
    p.add_argument("--simple", help="orbit name for the isomorphism check")
    p.add_argument("--embeddings", type=lambda s: s.split(","))
    p.add_argument("--multiset", type=_int_list)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--output", help="write the report here instead of stdout")
    return p


_TASK_KEYS = ("subspace", "m", "method", "rounds", "certificates", "rank", "simple", "embeddings", "multiset")


def _execute(args):
    if args.command == "verify-paper":
        return verify_paper(args.seed)
    if not args.problem:
        raise MalformedInput(f"{args.command} needs --problem")
    problem = load_problem(args.problem)
    explicit = {k: getattr(args, k) for k in _TASK_KEYS if getattr(args, k) is not None}
    if explicit or args.command in ("lambda-a", "oracle-ff", "classify"):
        tasks = [dict(explicit, command=args.command)]
        if not explicit:
            matching = [t for t in problem.tasks if t["command"] == args.command]
            tasks = matching or tasks
    else:
        tasks = [t for t in problem.tasks if t["command"] == args.command]
        if not tasks:
            raise MalformedInput(f"{args.command}: no target given and the problem has no matching tasks")
    for t in tasks:
        if "embeddings" in t:
            unknown = [e for e in t["embeddings"] if e not in problem.embeddings]
            if unknown:
                raise MalformedInput(f"unknown embedding(s) {', '.join(unknown)}")
        if "simple" in t and t["simple"] not in problem.orbit_names:
            raise MalformedInput(f"unknown orbit {t['simple']!r}")
    results = []
    flags = set()
    for t in tasks:
        entry, f = _run_task(problem, t, args.seed)
        results.append(entry)
        flags |= f
    return results, flags


def run(argv):
    """Execute a command line; returns ``(exit_code, report_dict)``."""
    report = {"schema": SCHEMA_VERSION, "command": None, "problem": None, "seed": DEFAULT_SEED}
    try:
        args = build_parser().parse_args(argv)
        report.update(command=args.command, problem=args.problem, seed=args.seed)
        results, flags = _execute(args)
        code = _exit_for(flags)
        report["results"] = results
    except MalformedInput as exc:
        code = EXIT_MALFORMED
        report["results"] = []
        report["error"] = str(exc)
    except ValidationFailure as exc:
        code = EXIT_VALIDATION
        report["results"] = []
        report["error"] = str(exc)
    if report["command"] is None:
        report["command"] = argv[0] if argv else ""
    report["status"] = STATUS[code]
    report["exit_code"] = code
    return code, report


def render_json(report):
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _flatten(prefix, value, lines):
    if isinstance(value, dict):
        if not value:
            lines.append(f"{prefix}: {{}}")
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else k, value[k], lines)
    elif isinstance(value, list) and value and any(isinstance(v, (dict, list)) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, lines)
    else:
        lines.append(f"{prefix}: {json.dumps(value)}")


def render_text(report):
    lines = [
        f"command: {report['command']}",
        f"status: {report['status']} (exit {report['exit_code']})",
    ]
    if report.get("error"):
        lines.append(f"error: {report['error']}")
    for i, entry in enumerate(report["results"]):
        head = f"[{i}] {entry['task'].get('command')}"
        if "check" in entry:
            head += f" {entry['check'].upper()}"
        lines.append(head)
        _flatten("  task", entry["task"], lines)
        _flatten("  result", entry["result"], lines)
    return "\n".join(lines) + "\n"


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    code, report = run(argv)
    io = argparse.ArgumentParser(add_help=False)
    io.add_argument("--format", default="json")
    io.add_argument("--output")
    opts, _ = io.parse_known_args(argv)
    text = render_text(report) if opts.format == "text" else render_json(report)
    if opts.output:
        with open(opts.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
