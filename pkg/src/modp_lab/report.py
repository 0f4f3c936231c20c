"""Run configuration, suite orchestration and deterministic report emission."""
from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import __version__
from .checks import SUITES, Context, checks_for, run_check
from .weights import is_prime

SCHEMA = "modp-lab-report/1"
MAX_F = 3


class ConfigError(ValueError):
    pass


def default_r(p: int, f: int) -> tuple:
    top = max(p - 5, 0)
    return tuple(min(2 + i, top) if top >= 2 else top for i in range(f))


@dataclass(frozen=True)
class RunConfig:
    p: int = 11
    f: int = 2
    r: Optional[tuple] = None
    jrho: tuple = ()
    ss: bool = False
    seed: int = 0
    cutoff: int = 12
    suite: str = "all"

    def validated(self) -> "RunConfig":
        if not isinstance(self.p, int) or not is_prime(self.p) or self.p < 5:
            raise ConfigError(f"p must be a prime >= 5, got {self.p}")
        if not 1 <= self.f <= MAX_F:
            raise ConfigError(f"f must lie in 1..{MAX_F}, got {self.f}")
        r = default_r(self.p, self.f) if self.r is None else tuple(self.r)
        if len(r) != self.f:
            raise ConfigError(f"r has {len(r)} entries, expected f = {self.f}")
        if not all(0 <= x <= self.p - 1 for x in r):
            raise ConfigError("entries of r must lie in [0, p-1]")
        jrho = tuple(sorted(set(self.jrho)))
        if not all(0 <= j < self.f for j in jrho):
            raise ConfigError("J_rho must be a subset of 0..f-1")
        if not 1 <= self.cutoff <= 40:
            raise ConfigError("cutoff must lie in 1..40")
        if self.suite not in SUITES + ("all",):
            raise ConfigError(f"unknown suite {self.suite!r}")
        return RunConfig(self.p, self.f, r, jrho, bool(self.ss), int(self.seed), self.cutoff, self.suite)

    def context(self) -> Context:
        return Context(self.p, self.f, tuple(self.r), tuple(self.jrho), self.ss, self.seed, self.cutoff)

    def to_json(self) -> dict:
        d = asdict(self)
        d["r"] = list(self.r) if self.r is not None else None
        d["jrho"] = list(self.jrho)
        return d


@dataclass
class Report:
    command: str
    config: dict
    records: list = field(default_factory=list)
    payload: Optional[dict] = None
    timings: dict = field(default_factory=dict)

    def summary(self) -> dict:
        counts = {v: sum(1 for r in self.records if r["verdict"] == v) for v in ("pass", "fail", "skip")}
        return {"n": len(self.records), **counts, "ok": counts["fail"] == 0}

    @property
    def ok(self) -> bool:
        return self.summary()["ok"]

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self, timing: bool = False) -> dict:
        recs = []
        for r in self.records:
            r = dict(r)
            if timing:
                r["timing_ms"] = self.timings.get(r["id"])
            recs.append(r)
        out = {"schema": SCHEMA, "version": __version__, "command": self.command,
               "config": self.config, "records": recs, "summary": self.summary()}
        if self.payload is not None:
            out["payload"] = self.payload
        return out


def threads() -> int:
    try:
        return max(1, int(os.environ.get("MODP_LAB_THREADS", "1")))
    except ValueError:
        raise ConfigError("MODP_LAB_THREADS must be an integer") from None


def run_suite(config: RunConfig, command: str = "verify") -> Report:
    cfg = config.validated()
    ctx = cfg.context()
    selected = checks_for(cfg.suite)
    timings = {}

    def one(c):
        t0 = time.perf_counter()
        rec = run_check(c, ctx)
        timings[c.id] = round(1000 * (time.perf_counter() - t0), 3)
        return rec

    n = threads()
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as ex:
            records = list(ex.map(one, selected))
    else:
        records = [one(c) for c in selected]
    return Report(command, cfg.to_json(), records, timings=timings)


def dumps(report: Report, fmt: str = "json", timing: bool = False) -> str:
    if fmt == "json":
        return json.dumps(report.to_json(timing), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        cols = ["id", "suite", "verdict", "params", "witness"] + (["timing_ms"] if timing else [])
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in report.to_json(timing)["records"]:
            row = [r["id"], r["suite"], r["verdict"],
                   json.dumps(r["params"], sort_keys=True), json.dumps(r["witness"], sort_keys=True)]
            if timing:
                row.append(r["timing_ms"])
            w.writerow(row)
        return buf.getvalue()
    raise ConfigError(f"unknown format {fmt!r}")


def emit(report: Report, path: Optional[str], fmt: str = "json", timing: bool = False) -> str:
    text = dumps(report, fmt, timing)
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def load_json(text: str) -> dict:
    data = json.loads(text)
    for key in ("schema", "version", "command", "config", "records", "summary"):
        if key not in data:
            raise ValueError(f"missing key {key}")
    if data["schema"] != SCHEMA:
        raise ValueError(f"unknown schema {data['schema']}")
    return data
