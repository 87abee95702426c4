"""Job files: one JSON object describing a field, an object and a command.

    {"field": {"p": 2, "r": 2, "m": 1, "modulus": [1, 1, 1]},
     "shtuka": {"dim": 1, "matrix": [["g"]]},
     "cmd": "drinfeld",
     "options": {"m": 2}}

Instead of (or besides) "shtuka" a job may carry "presentation", a list of
{"name", "weight", "trunc", "relation": {generator name: element}}, or
"exponents" (with "q") for the purely combinatorial commands.
"""
import json
from dataclasses import dataclass, field as dc_field

from .errors import ShtukaLabError
from .gf import FqField
from .hopf import Generator, HopfPresentation
from .shtuka import Shtuka

COMMANDS = ("drinfeld", "dieudonne", "roundtrip", "adjoint", "balance", "quasibalance",
            "sseries", "lisa", "classify", "pointcount")
TOP_KEYS = {"field", "shtuka", "presentation", "exponents", "q", "cmd", "options"}
FIELD_KEYS = {"p", "r", "m", "modulus"}
SHTUKA_KEYS = {"dim", "matrix"}
GEN_KEYS = {"name", "weight", "trunc", "relation"}
OPTION_KEYS = {"m", "cap", "seed", "expect_iso"}


class JobError(ShtukaLabError, ValueError):
    """A job file could not be parsed; ``kind`` is SyntaxError, UnknownKey,
    BadElement or the name of the field construction error."""

    def __init__(self, kind, message, where=None, line=None, col=None):
        self.kind, self.where, self.line, self.col = kind, where, line, col
        loc = ""
        if line is not None:
            loc = f" at line {line}, column {col}"
        elif where:
            loc = f" at {where}"
        super().__init__(f"{kind}{loc}: {message}")


@dataclass
class Job:
    cmd: str
    field: FqField = None
    shtuka: Shtuka = None
    presentation: HopfPresentation = None
    exponents: tuple = None
    q: int = None
    options: dict = dc_field(default_factory=dict)


def _expect(cond, kind, msg, where):
    if not cond:
        raise JobError(kind, msg, where)


def _check_keys(block, allowed, where, required=()):
    _expect(isinstance(block, dict), "SyntaxError", "expected an object", where)
    for key in block:
        _expect(key in allowed, "UnknownKey", f"unknown key {key!r}", where)
    for key in required:
        _expect(key in block, "UnknownKey", f"missing key {key!r} in {where} block", where)


def _int(value, where):
    _expect(isinstance(value, int) and not isinstance(value, bool), "SyntaxError", "expected an integer", where)
    return value


def _element(field, value, where):
    try:
        return field.parse(value)
    except ShtukaLabError as exc:
        raise JobError("BadElement", str(exc), where) from None


def _parse_field(block):
    _check_keys(block, FIELD_KEYS, "field", required=sorted(FIELD_KEYS))
    p, r, m = (_int(block[k], f"field.{k}") for k in ("p", "r", "m"))
    mod = block["modulus"]
    _expect(isinstance(mod, list) and mod and all(isinstance(c, int) and not isinstance(c, bool) for c in mod),
            "SyntaxError", "modulus must be a list of integers", "field.modulus")
    try:
        return FqField(p, r, m, mod)
    except ShtukaLabError as exc:
        raise JobError(type(exc).__name__, str(exc), "field") from None


def _parse_shtuka(field, block):
    _check_keys(block, SHTUKA_KEYS, "shtuka", required=("dim", "matrix"))
    n = _int(block["dim"], "shtuka.dim")
    rows = block["matrix"]
    _expect(isinstance(rows, list) and len(rows) == n, "SyntaxError", f"matrix must have {n} rows", "shtuka.matrix")
    F = []
    for i, row in enumerate(rows):
        _expect(isinstance(row, list) and len(row) == n, "SyntaxError", f"row must have {n} entries",
                f"shtuka.matrix[{i}]")
        F.append([_element(field, e, f"shtuka.matrix[{i}][{j}]") for j, e in enumerate(row)])
    return Shtuka(field, F) if n else Shtuka(field, [])


def _parse_presentation(field, block):
    _expect(isinstance(block, list), "SyntaxError", "presentation must be a list of generators", "presentation")
    names = []
    for i, g in enumerate(block):
        _check_keys(g, GEN_KEYS, f"presentation[{i}]", required=("name", "weight", "trunc"))
        _expect(isinstance(g["name"], str), "SyntaxError", "name must be a string", f"presentation[{i}].name")
        names.append(g["name"])
    _expect(len(set(names)) == len(names), "SyntaxError", "duplicate generator names", "presentation")
    gens = []
    for i, g in enumerate(block):
        rel = g.get("relation", {})
        _expect(isinstance(rel, dict), "SyntaxError", "relation must map generator names to elements",
                f"presentation[{i}].relation")
        pairs = []
        for name, value in rel.items():
            _expect(name in names, "UnknownKey", f"unknown generator {name!r}", f"presentation[{i}].relation")
            c = _element(field, value, f"presentation[{i}].relation.{name}")
            if c:
                pairs.append((names.index(name), c))
        gens.append(Generator(g["name"], _int(g["weight"], f"presentation[{i}].weight"),
                              _int(g["trunc"], f"presentation[{i}].trunc"), tuple(sorted(pairs))))
    P = HopfPresentation(field, tuple(gens))
    try:
        P.validate()
    except (ShtukaLabError, ValueError) as exc:
        raise JobError(type(exc).__name__, str(exc), "presentation") from None
    return P


def parse_spec(text):
    """Parse job text into a Job; every failure is reported as a JobError."""
    try:
        return _parse(text)
    except JobError:
        raise
    except Exception as exc:  # parsing must be total
        raise JobError("SyntaxError", f"{type(exc).__name__}: {exc}") from None


def _parse(text):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JobError("SyntaxError", exc.msg, line=exc.lineno, col=exc.colno) from None
    _check_keys(data, TOP_KEYS, "job", required=("cmd",))
    cmd = data["cmd"]
    _expect(cmd in COMMANDS, "UnknownKey", f"unknown command {cmd!r}", "cmd")
    job = Job(cmd=cmd)
    if "field" in data:
        job.field = _parse_field(data["field"])
    for key in ("shtuka", "presentation"):
        if key in data:
            _expect(job.field is not None, "UnknownKey", f"{key} block needs a field block", key)
    if "shtuka" in data:
        job.shtuka = _parse_shtuka(job.field, data["shtuka"])
    if "presentation" in data:
        job.presentation = _parse_presentation(job.field, data["presentation"])
    if "exponents" in data:
        ex = data["exponents"]
        _expect(isinstance(ex, list) and all(isinstance(s, int) and not isinstance(s, bool) and s > 0 for s in ex),
                "SyntaxError", "exponents must be positive integers", "exponents")
        job.exponents = tuple(ex)
    if "q" in data:
        job.q = _int(data["q"], "q")
    elif job.field is not None:
        job.q = job.field.q
    opts = data.get("options", {})
    _check_keys(opts, OPTION_KEYS, "options")
    job.options = dict(opts)
    return job


# -- serialisation -------------------------------------------------------------


def field_block(k):
    return {"p": k.p, "r": k.r, "m": k.m, "modulus": list(k.modulus)}


def shtuka_block(M):
    return {"dim": M.n, "matrix": [[M.field.to_str(a) for a in row] for row in M.F]}


def presentation_block(P):
    k = P.field
    out = []
    for g in P.generators:
        rel = {P.generators[j].name: k.to_str(c) for j, c in g.relation}
        out.append({"name": g.name, "weight": g.weight, "trunc": g.trunc, "relation": rel})
    return out


def make_job(cmd, field=None, shtuka=None, presentation=None, exponents=None, q=None, **options):
    data = {"cmd": cmd}
    if field is not None:
        data["field"] = field_block(field)
    if shtuka is not None:
        data["shtuka"] = shtuka_block(shtuka)
    if presentation is not None:
        data["presentation"] = presentation_block(presentation)
    if exponents is not None:
        data["exponents"] = list(exponents)
    if q is not None:
        data["q"] = q
    if options:
        data["options"] = options
    return data


def dumps(job_dict):
    return json.dumps(job_dict, indent=2, sort_keys=True) + "\n"
