"""Command line front end: ``shtukalab [cmd] --job FILE [--seed N] ...``.

Exit status: 0 success, 1 a verification failed, 2 the job could not be
parsed or a module rejected it.
"""
import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field as dc_field

from . import balance, classify, functors, hopf, selftest
from .errors import ShtukaLabError
from .jobs import COMMANDS, JobError, dumps, parse_spec


@dataclass
class Report:
    text: list = dc_field(default_factory=list)
    values: dict = dc_field(default_factory=dict)
    ok: bool = True

    def machine(self):
        return [f"{key}={_fmt(self.values[key])}" for key in sorted(self.values)]

    def render(self, machine_only=False):
        lines = [] if machine_only else list(self.text) + ["--"]
        return "\n".join(lines + self.machine()) + "\n"


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(_fmt(v) for v in value)
    return str(value)


def _group(job):
    if job.presentation is not None:
        return functors.GroupScheme.from_presentation(job.presentation)
    if job.shtuka is not None:
        return functors.drinfeld(job.shtuka)
    raise JobError("UnknownKey", f"command {job.cmd} needs a presentation or shtuka block", "job")


def _matrix_str(M):
    return ";".join(",".join(M.field.to_str(a) for a in row) for row in M.F)


def run(job, expect_iso=False):
    rep = Report()
    v = rep.values
    cmd = job.cmd
    v["cmd"] = cmd
    if cmd == "drinfeld":
        if job.shtuka is None:
            raise JobError("UnknownKey", "drinfeld needs a shtuka block", "job")
        G = functors.drinfeld(job.shtuka)
        H = G.hopf
        v.update(order=H.dim, eigen_profile=hopf.eigen_profile(H),
                 prim_ranks=[len(b) for b in hopf.primitives(H).by_power],
                 structure_sha256=hashlib.sha256(hopf.dump(H).encode()).hexdigest() if H.dim <= 64 else "skipped")
        rep.text.append(f"G(M) has order {H.dim} = q^{job.shtuka.n}")
    elif cmd == "dieudonne":
        M = functors.dieudonne(_group(job))
        v.update(rank=M.n, matrix=_matrix_str(M))
        rep.text.append(f"M(G) has rank {M.n}")
    elif cmd == "roundtrip":
        if job.shtuka is not None and job.presentation is None:
            r = functors.roundtrip(job.shtuka)
            v.update(counit_iso=r.counit_iso, isomorphic=r.details["isomorphic"],
                     iso_certainty=r.details["iso_certainty"], order=r.details["order"])
            iso = r.counit_iso and r.details["isomorphic"]
            rep.text.append(f"v_M is {'an isomorphism' if r.counit_iso else 'not an isomorphism'}")
        else:
            r = functors.roundtrip(_group(job))
            v.update(unit_iso=r.unit_iso, order=r.details["order"], order_roundtrip=r.details["order_roundtrip"])
            iso = r.unit_iso
            rep.text.append(f"u_G is {'an isomorphism' if iso else 'not an isomorphism'}: "
                            f"order {r.details['order_roundtrip']} vs {r.details['order']}")
        rep.ok = iso or not expect_iso
    elif cmd == "adjoint":
        if job.presentation is None or job.shtuka is None:
            raise JobError("UnknownKey", "adjoint needs both a presentation and a shtuka block", "job")
        a = functors.adjunction_dims(_group(job), job.shtuka)
        v.update(dim_grp_hom=a.dim_grp_hom, dim_sht_hom=a.dim_sht_hom, equal=a.equal)
        rep.text.append(f"Hom dimensions: groups {a.dim_grp_hom}, shtukas {a.dim_sht_hom}")
        rep.ok = a.equal
    elif cmd == "balance":
        b = balance.is_balanced(_group(job))
        v.update(additive_type=b.additive_type, cond_i=b.cond_i, cond_ii=b.cond_ii, cond_iii=b.cond_iii,
                 cond_iv=b.cond_iv, prim_ranks=b.prim_ranks, order=b.order, balanced=b.balanced)
        rep.text.append(f"{'balanced' if b.balanced else 'not balanced'}; Prim ranks {b.prim_ranks}")
        rep.ok = b.flags_agree or not b.additive_type
    elif cmd == "quasibalance":
        quasi, ranks = balance.is_quasi_balanced(_group(job))
        v.update(quasi_balanced=quasi, ranks=ranks)
        rep.text.append(f"{'quasi-balanced' if quasi else 'not quasi-balanced'}; rk I_j = {ranks}")
    elif cmd in ("sseries", "lisa"):
        if job.exponents is None or job.q is None:
            raise JobError("UnknownKey", f"{cmd} needs exponents and q (or a field block)", "job")
        if cmd == "sseries":
            e = balance.s_series(job.exponents, job.q)
            v.update(q=job.q, exponents=e.s_list, S=e.S_coeffs, ranks=e.ranks, quasi_balanced=e.quasi_balanced)
            rep.text.append(f"S(X) coefficients {e.S_coeffs}; rk I_j = {e.ranks}")
        else:
            lv = balance.lisa_criterion(job.exponents, job.q)
            v.update(q=job.q, exponents=job.exponents, quasi_balanced=lv.quasi_balanced)
            rep.text.append(lv.reason)
    elif cmd == "classify":
        G = _group(job)
        s = classify.structure_decompose(G, cap=int(job.options.get("cap", 8)))
        v.update(etale_order=s.etale_order, connected_exponents=s.connected_exponents,
                 constancy_degree=s.constancy_degree, total_order=s.total_order)
        rep.text.append(s.expression())
        rep.ok = s.total_order == G.order
    elif cmd == "pointcount":
        m = int(job.options.get("m", 1))
        v.update(m=m, points=classify.point_count(_group(job), m))
        rep.text.append(f"{v['points']} points over the degree-{m} extension")
    return rep


def _selftest(seed, out_dir, machine):
    failed = None
    passed = 0
    for number, _, _ in selftest.CRITERIA:
        res = selftest.run_criterion(number, seed)
        if not machine:
            print(res.line(), flush=True)
        if res.passed:
            passed += 1
            continue
        failed = res
        break
    print(f"passed={passed}")
    print(f"failed={0 if failed is None else 1}")
    if failed is not None and failed.counterexample is not None:
        path = os.path.join(out_dir, f"counterexample_criterion{failed.number}.json")
        with open(path, "w") as fh:
            fh.write(dumps(failed.counterexample))
        print(f"counterexample={path}")
    return 0 if failed is None else 1


def main(argv=None):
    ap = argparse.ArgumentParser(prog="shtukalab", description="Shtukas and finite group schemes of additive type.")
    ap.add_argument("cmd", nargs="?", choices=COMMANDS + ("selftest",))
    ap.add_argument("--job", help="job file (JSON)")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--expect-iso", action="store_true")
    ap.add_argument("--cap", type=int, help="dimension cap for expanded Hopf algebras")
    ap.add_argument("--machine", action="store_true", help="print only the key=value section")
    ap.add_argument("--out", default=".", help="directory for counterexample job files")
    args = ap.parse_args(argv)
    if args.cap is not None:
        os.environ["SHTUKALAB_CAP"] = str(args.cap)
    if args.cmd == "selftest":
        return _selftest(args.seed, args.out, args.machine)
    if not args.job:
        ap.error("--job is required")
    try:
        with open(args.job, "rb") as fh:
            job = parse_spec(fh.read())
        if args.cmd:
            job.cmd = args.cmd
        expect = args.expect_iso or bool(job.options.get("expect_iso", False))
        report = run(job, expect_iso=expect)
    except (JobError, ShtukaLabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.render(machine_only=args.machine))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
