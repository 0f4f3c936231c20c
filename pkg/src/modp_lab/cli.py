"""Command-line front end.  Exit codes: 0 all pass, 1 some check failed, 2 bad config."""
from __future__ import annotations

import argparse
import sys

from . import defring, iwahori, koszul, rho
from .checks import SUITES, complex_report, lemma_ids, tauJ_report
from .report import ConfigError, Report, RunConfig, emit, run_suite
from .weights import HChar, char_n_generic, sigma_chi


def _ints(text: str) -> tuple:
    text = (text or "").strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ConfigError(f"expected comma separated integers, got {text!r}") from None


def _signed(text: str) -> tuple:
    """'+0,-1' -> ((0, 1), (1, -1)); a bare index means +."""
    out = []
    for tok in (text or "").replace(" ", "").split(","):
        if not tok:
            continue
        sign = -1 if tok[0] == "-" else 1
        try:
            out.append((int(tok.lstrip("+-")), sign))
        except ValueError:
            raise ConfigError(f"bad element {tok!r} of I") from None
    return tuple(out)


def _common(ap: argparse.ArgumentParser):
    ap.add_argument("--p", type=int, default=11)
    ap.add_argument("--f", type=int, default=2)
    ap.add_argument("--r", default=None, help="comma separated r_0,...,r_{f-1}")
    ap.add_argument("--jrho", default="", help="comma separated subset J_rho")
    ap.add_argument("--ss", action="store_true", help="use the split (semisimple) rho")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cutoff", type=int, default=12)
    ap.add_argument("--suite", default=None, choices=SUITES + ("all",))
    ap.add_argument("--emit", default=None, help="output file (stdout if omitted)")
    ap.add_argument("--format", default="json", choices=("json", "csv"))
    ap.add_argument("--timing", action="store_true", help="include per-check timings")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="modp-lab")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run check suites")
    v.add_argument("target", nargs="?", default=None, choices=SUITES + ("all",))
    _common(v)

    d = sub.add_parser("d0", help="weights of rho and the D_0 data")
    _common(d)

    w = sub.add_parser("iwahori", help="Iwahori layered profiles")
    _common(w)
    w.add_argument("--chi", required=True, help="a,b exponents of the character")
    w.add_argument("--op", required=True, choices=("wbar3", "theta", "tauj"))
    w.add_argument("--J", default="", help="the subset for tauj")

    k = sub.add_parser("koszul", help="one explicit complex and its exactness")
    _common(k)
    k.add_argument("--kind", required=True, choices=koszul.KINDS)

    r = sub.add_parser("defring", help="Le's relations and the ideal lemmas")
    _common(r)
    r.add_argument("--srho", default="", help="the subset S")
    r.add_argument("--J", default="")
    r.add_argument("--I", default="", help="signed indices, e.g. +0,-1")
    r.add_argument("--check", required=True, choices=("tangent", "divis", "cyclic"))

    sub.add_parser("ids", help="list the lemma ids")
    return ap


def _config(args, suite="all") -> RunConfig:
    r = _ints(args.r) if args.r is not None else None
    return RunConfig(args.p, args.f, r, _ints(args.jrho), args.ss, args.seed, args.cutoff,
                     suite).validated()


def _record(check_id, suite, ok, params=None, witness=None, skip=False) -> dict:
    verdict = "skip" if skip else ("pass" if ok else "fail")
    return {"id": check_id, "suite": suite, "params": params or {}, "verdict": verdict,
            "witness": None if ok or skip else witness}


def cmd_verify(args) -> Report:
    suite = args.target or args.suite or "all"
    return run_suite(_config(args, suite))


def cmd_d0(args) -> Report:
    cfg = _config(args, "d0")
    rep = run_suite(cfg, "d0")
    rh = cfg.context().rho
    payload = {"rho": rh.to_json(), "generic": rh.generic(), "strongly_generic": rh.strongly_generic()}
    if rh.generic():
        D = rho.D_of_rho(rh)
        payload["D_rho_ss"] = [s.to_json() for s in sorted(rho.D_of_rho_ss(rh))]
        payload["D_rho"] = [s.to_json() for s in sorted(D)]
        payload["D0"] = [{"sigma": s.to_json(),
                          "jh": [w.to_json() for w in sorted(rho.jh_D0_sigma(rh, s, True))]}
                         for s in sorted(D)]
        payload["D1_chars"] = [{"chi": c.to_json(), "tau": rho.tau_of_char(rh, c).to_json()}
                               for c in sorted(rho.chars_D1(rh))]
    rep.payload = payload
    return rep


def cmd_iwahori(args) -> Report:
    cfg = _config(args, "iwahori")
    ab = _ints(args.chi)
    if len(ab) != 2:
        raise ConfigError("--chi expects a,b")
    chi = HChar(ab[0], ab[1], cfg.p, cfg.f)
    generic = char_n_generic(chi, 2)
    f = cfg.f
    if args.op == "wbar3":
        prof = iwahori.Wbar3_profile(chi)
        ok = prof.sizes() == [2 * f, 2 * f, 1] and prof.multiset()[chi] == 2 * f + 1
        payload = {"chi": chi.to_json(), "Wbar3": _profile(prof),
                   "W3_socle_size": len(iwahori.W_profile(chi, 3).layers[0])}
        rec = _record("L-Wbar3-socle", "iwahori", ok, {"chi": chi.to_json()},
                      {"sizes": prof.sizes()}, skip=not generic)
    elif args.op == "theta":
        tau = sigma_chi(chi)
        prof = iwahori.theta_profile(tau)
        ok = iwahori.theta_sequence_ok(tau)
        payload = {"tau": tau.to_json(), "theta": prof.to_json(),
                   "theta_ord": iwahori.theta_ord_profile(tau).to_json()}
        rec = _record("P-Theta-twoparts", "iwahori", ok, {"tau": tau.to_json()}, {}, skip=not generic)
    else:
        J = frozenset(_ints(args.J))
        if not J <= set(range(f)):
            raise ConfigError("--J must be a subset of 0..f-1")
        spec = iwahori.TauJSpec(chi, J)
        rep = tauJ_report(chi, J)
        payload = {"chi": chi.to_json(), "J": sorted(J),
                   "socle": [c.to_json() for c in sorted(iwahori.tauJ_socle(spec))],
                   "jh": [c.to_json() for c in sorted(iwahori.tauJ_jh(spec))]}
        rec = _record("L-socle-tauJ", "iwahori", rep["ok"], {"J": sorted(J)}, rep,
                      skip=cfg.p <= 5)
    return Report("iwahori", cfg.to_json(), [rec], payload)


def _profile(prof) -> dict:
    return {"layers": [[c.to_json() for c in sorted(layer)] for layer in prof.layers]}


def cmd_koszul(args) -> Report:
    cfg = _config(args, "koszul")
    if cfg.p <= 5:
        raise ConfigError("the explicit complexes require p > 5")
    rep = complex_report(args.kind, cfg.p, cfg.cutoff)
    C = koszul.build_complex(args.kind, cfg.p)
    ex = koszul.check_exact(C, cfg.cutoff)
    rec = _record(f"L-complex-{args.kind}", "koszul", rep["ok"], {"cutoff": cfg.cutoff},
                  {k: v for k, v in rep.items() if v is False})
    payload = {"complex": C.to_json(), "exactness": ex, "checks": rep}
    return Report("koszul", cfg.to_json(), [rec], payload)


def cmd_defring(args) -> Report:
    cfg = _config(args, "defring")
    f = cfg.f
    S, J, I = _ints(args.srho), _ints(args.J), _signed(args.I)
    try:
        rels = defring.le_relations(J, I, S, f)
    except defring.InvalidCell as exc:
        raise ConfigError(str(exc)) from None
    payload = {"S": list(S), "J": list(J), "I": [list(x) for x in I],
               "relations": [str(g) for g in rels]}
    records = []
    if args.check == "tangent":
        d = defring.le_tangent_dims(f, S, J, p=cfg.p)
        own = defring.tangent_dim(defring.le_presentation(J, I, S, f, p=cfg.p))
        payload["tangent_dim"] = own
        payload["tangent_dims_reference"] = d
        records.append(_record("C-Le-tangent-dim", "defring", d["empty"] == d["J"] == d["expected"],
                               {"S": list(S), "J": list(J)}, d))
    elif args.check == "divis":
        supers = [I2 for I2 in defring._valid_I(f) if set(I) <= set(I2)]
        bad = [list(I2) for I2 in supers if not defring.le_divisibility(J, I, I2, S, f)]
        payload["n_supersets"] = len(supers)
        records.append(_record("T-Le-divisibility", "defring", not bad, {"n": len(supers)},
                               {"failing_I2": bad[:1]}))
    else:
        n = agree = regular = tan_agree = 0
        subs = [I1 for I1 in defring._valid_I(f) if set(I1) <= set(I)]
        for a in range(len(subs)):
            for b in range(a, len(subs)):
                pres = [defring.le_presentation(J, X, S, f, n_formal=0, N=4, p=cfg.p)
                        for X in (I, subs[a], subs[b])]
                n += 1
                _, cyc = defring.cyclicity_check(*pres)
                s = defring.same_subspace(defring.ideal_sum(pres[1], pres[2]).span(),
                                          pres[0].span(), cfg.p)
                agree += cyc == s
                try:
                    t1, t2 = defring.tangent_ideal_equiv(*pres)
                    regular += 1
                    tan_agree += t1 == t2
                except defring.HypothesisViolated:
                    pass
        payload.update({"n_instances": n, "n_regular": regular})
        records.append(_record("L-cyclic-CA", "defring", agree == n, {"n": n}, {"agree": agree}))
        records.append(_record("L-tang-ideal-relation", "defring", tan_agree == regular,
                               {"n_regular": regular}, {"agree": tan_agree}))
    return Report("defring", cfg.to_json(), records, payload)


COMMANDS = {"verify": cmd_verify, "d0": cmd_d0, "iwahori": cmd_iwahori,
            "koszul": cmd_koszul, "defring": cmd_defring}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "ids":
        print("\n".join(lemma_ids()))
        return 0
    try:
        rep = COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    text = emit(rep, args.emit, args.format, args.timing)
    if not args.emit:
        sys.stdout.write(text)
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
