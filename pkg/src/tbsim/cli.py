"""Command-line entry point: ``tbsim characterize|calibrate|fringe|analyze``.

Every run writes ``manifest.json`` into the output directory, including runs
that fail. Exit codes: 0 success, 2 bad configuration or input, 3 calibration
did not converge, 4 any other runtime failure.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import FitError, FringeScan, ScanFormatError, fit_fringe, fit_report, singles_flatness
from .calibration import CALIBRATION_FORMAT, calibrate_chip
from .circuit import (
    ChipParams,
    CircuitError,
    CircuitNetlist,
    ConfigurationError,
    PortLookupError,
    build_reference_chip,
    pulse_response,
    spectra_csv,
    spectral_sweep,
)
from .components import CapabilityError, DomainError
from .detection import (
    DEFAULT_SEED,
    ExperimentConfig,
    ExperimentConfigError,
    calibrated_reference_chip,
    fringe_scan,
    histogram_offsets,
)

EXIT_OK, EXIT_INPUT, EXIT_CALIBRATION, EXIT_RUNTIME = 0, 2, 3, 4
MANIFEST_FORMAT = "tbsim-manifest/1"
DEFAULT_OUT = "tbsim_out"


class InputError(Exception):
    """Bad command-line value or input file (exit code 2)."""


class CalibrationFailed(Exception):
    """Calibration finished without meeting every target (exit code 3)."""


INPUT_ERRORS = (InputError, CircuitError, PortLookupError, ConfigurationError, ExperimentConfigError,
                ScanFormatError, FitError, DomainError, CapabilityError)


# --------------------------------------------------------------------------
# helpers


def parse_grid(text: str) -> tuple[float, float, int]:
    try:
        start, stop, steps = text.split(":")
        start, stop, steps = float(start), float(stop), int(steps)
    except ValueError as exc:
        raise InputError(f"--grid expects START:STOP:STEPS, got {text!r}") from exc
    if steps < 1:
        raise InputError("--grid STEPS must be >= 1")
    return start, stop, steps


def parse_assignments(items) -> dict[str, float]:
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        try:
            if not sep:
                raise ValueError
            out[key.strip()] = float(val)
        except ValueError as exc:
            raise InputError(f"--set expects HEATER=VOLTS, got {item!r}") from exc
    return out


class Run:
    """Tracks inputs and outputs of one invocation and writes the manifest."""

    def __init__(self, args):
        self.args = args
        self.out = Path(args.out or os.environ.get("TBSIM_OUT") or DEFAULT_OUT)
        self.hashes: dict[str, str] = {}
        self.outputs: list[str] = []
        self.seed = getattr(args, "seed", None)
        self.t0 = time.perf_counter()

    def read(self, path) -> str:
        p = Path(path)
        try:
            data = p.read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {p}: {exc.strerror}") from exc
        self.hashes[str(p)] = hashlib.sha256(data).hexdigest()
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"{p} is not UTF-8 text") from exc

    def write(self, name: str, text: str) -> Path:
        self.out.mkdir(parents=True, exist_ok=True)
        p = self.out / name
        p.write_text(text, encoding="utf-8")
        self.outputs.append(str(p))
        return p

    def manifest(self, code: int, error: str | None) -> None:
        doc = {
            "format": MANIFEST_FORMAT,
            "tool_version": __version__,
            "subcommand": self.args.command,
            "argv": sys.argv[1:],
            "config_hashes": self.hashes,
            "seed": self.seed,
            "outputs": sorted(self.outputs) + [str(self.out / "manifest.json")],
            "duration_s": round(time.perf_counter() - self.t0, 6),
            "exit_code": code,
            "error": error,
        }
        try:
            self.out.mkdir(parents=True, exist_ok=True)
            (self.out / "manifest.json").write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        except OSError as exc:
            print(f"tbsim: could not write manifest: {exc}", file=sys.stderr)


def _load_circuit(run: Run, calibrated: bool) -> CircuitNetlist:
    if run.args.config:
        return CircuitNetlist.from_json(run.read(run.args.config))
    return calibrated_reference_chip() if calibrated else build_reference_chip()


# --------------------------------------------------------------------------
# subcommands


def cmd_characterize(run: Run) -> int:
    a = run.args
    net = _load_circuit(run, calibrated=True)
    net = net.with_voltages(parse_assignments(a.set))
    start, stop, steps = parse_grid(a.grid or "1540:1570:601")
    grid = np.linspace(start, stop, steps)
    ports = [p.strip() for p in a.ports.split(",") if p.strip()]
    for p in [a.in_port, a.pulse_port, *ports]:
        net.port_ref(p)  # raises with the offending label
    spectra = spectral_sweep(net, a.in_port, grid, ports)
    run.write("spectra.csv", spectra_csv(grid, spectra))

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["port", "bin", "offset_ps", "power"])
    for port, b, off, pw in pulse_response(net, a.pulse_port, a.pulse_lambda):
        w.writerow([port, b, f"{off:g}", repr(float(pw))])
    run.write("pulse_response.csv", buf.getvalue())
    print(f"wrote {len(ports)} spectra ({steps} points) and pulse response from port {a.pulse_port}")
    return EXIT_OK


def cmd_calibrate(run: Run) -> int:
    net = _load_circuit(run, calibrated=False)
    tuned, report = calibrate_chip(net, ChipParams())
    run.write("calibration.json", report.to_json() + "\n")
    run.write("circuit_calibrated.json", tuned.to_json() + "\n")
    for k, v in report.converged.items():
        print(f"{k:>10s}: {'converged' if v else 'NOT converged'}")
    if not report.all_converged:
        raise CalibrationFailed("calibration did not meet every target; see calibration.json")
    print(f"pump rejection {report.objectives['pump_rejection_db']:.1f} dB ({CALIBRATION_FORMAT})")
    return EXIT_OK


def _scan_grid(text: str, spacing: str) -> np.ndarray:
    start, stop, steps = parse_grid(text)
    if start < 0 or stop < 0:
        raise InputError("heater voltages must be >= 0")
    if spacing == "u2":
        return np.sqrt(np.linspace(start**2, stop**2, steps))
    return np.linspace(start, stop, steps)


def cmd_fringe(run: Run) -> int:
    a = run.args
    cfg = ExperimentConfig.from_json(run.read(a.config)) if a.config else ExperimentConfig()
    volts = dict(cfg.heater_voltages)
    volts.update(parse_assignments(a.set))
    cfg = replace(cfg, heater_voltages=volts)
    if a.seed is not None:
        cfg = replace(cfg, rng_seed=a.seed)
    if a.pulses is not None:
        cfg = replace(cfg, n_pulses=a.pulses)
    if a.noise == "off":
        cfg = cfg.noiseless()
    cfg.validate()
    run.seed = cfg.rng_seed
    u = _scan_grid(a.grid or "0:10:21", a.spacing)
    scan = fringe_scan(cfg, a.heater, u, threads=a.threads)
    run.write("scan.csv", scan.to_csv())
    hist = "offset_ps,counts\n" + "".join(f"{k:g},{v}\n" for k, v in sorted(scan.histogram.items()))
    run.write("histogram.csv", hist)
    rep = _analyze(scan)
    run.write("fit.json", json.dumps(rep, indent=2) + "\n")
    print(f"V = {rep['V']:.4f} +/- {rep['sigma_V']:.4f}  classical limit: {rep['verdict']}")
    return EXIT_OK


def _analyze(scan: FringeScan) -> dict:
    rep = {"format": "tbsim-fit/1", **fit_report(fit_fringe(scan))}
    cs, ci, dof = singles_flatness(scan)
    rep["singles_flatness"] = {"chi2_s": cs, "chi2_i": ci, "dof": dof}
    if scan.histogram:
        rep["histogram_peaks"] = [{"offset_ps": o, "counts": c} for o, c in histogram_offsets(scan.histogram)]
    return rep


def _read_histogram(text: str) -> dict[float, int]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [h.strip() for h in rows[0]] != ["offset_ps", "counts"]:
        raise ScanFormatError("histogram header must be offset_ps,counts", [1])
    hist, bad = {}, []
    for n, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        try:
            off, cnt = float(row[0]), int(row[1])
            if cnt < 0:
                raise ValueError
            hist[off] = cnt
        except (ValueError, IndexError):
            bad.append(n)
    if bad:
        raise ScanFormatError(f"malformed histogram rows: {', '.join(map(str, bad))}", bad)
    return hist


def cmd_analyze(run: Run) -> int:
    a = run.args
    path = a.scan or a.config
    if not path:
        raise InputError("analyze needs a scan CSV (positional or --config)")
    scan = FringeScan.from_csv(run.read(path), heater=a.heater or "")
    if a.histogram:
        scan.histogram = _read_histogram(run.read(a.histogram))
    rep = _analyze(scan)
    run.write("analysis.json", json.dumps(rep, indent=2) + "\n")
    fl = rep["singles_flatness"]
    print(f"V = {rep['V']:.4f} +/- {rep['sigma_V']:.4f}  classical limit: {rep['verdict']}")
    print(f"singles chi2/dof: signal {fl['chi2_s'] / fl['dof']:.2f}, idler {fl['chi2_i'] / fl['dof']:.2f}")
    return EXIT_OK


COMMANDS = {"characterize": cmd_characterize, "calibrate": cmd_calibrate, "fringe": cmd_fringe,
            "analyze": cmd_analyze}


# --------------------------------------------------------------------------


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="input JSON (circuit or experiment, depending on the command)")
    common.add_argument("--out", help="output directory (default: $TBSIM_OUT or ./tbsim_out)")
    common.add_argument("--seed", type=_u64, default=None, help=f"RNG seed (default {DEFAULT_SEED})")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--noise", choices=("on", "off"), default="on")
    common.add_argument("--heater", default=None)
    common.add_argument("--grid", default=None, metavar="START:STOP:STEPS")
    common.add_argument("--set", action="append", metavar="HEATER=VOLTS", help="override a heater voltage")

    ap = argparse.ArgumentParser(prog="tbsim", description="Time-bin entanglement chip simulator.")
    ap.add_argument("--version", action="version", version=f"tbsim {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("characterize", parents=[common], help="classical spectra and pulse response")
    p.add_argument("--in-port", default="7", help="broadband input port (default 7)")
    p.add_argument("--ports", default="5,6", help="comma-separated monitored ports")
    p.add_argument("--pulse-port", default="2")
    p.add_argument("--pulse-lambda", type=float, default=1555.7)

    sub.add_parser("calibrate", parents=[common], help="tune couplers and demultiplexers")

    p = sub.add_parser("fringe", parents=[common], help="simulate a two-photon fringe scan")
    p.add_argument("--pulses", type=_positive, default=None, help="pulses per scan point")
    p.add_argument("--spacing", choices=("u", "u2"), default="u2",
                   help="space grid points evenly in u or in u**2 (default)")
    p.set_defaults(heater="s")

    p = sub.add_parser("analyze", parents=[common], help="re-fit a scan CSV")
    p.add_argument("scan", nargs="?", help="scan CSV as written by 'fringe'")
    p.add_argument("--histogram", help="optional offset_ps,counts CSV")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "fringe" and args.heater is None:
        args.heater = "s"
    run = Run(args)
    code, error = EXIT_OK, None
    try:
        code = COMMANDS[args.command](run)
    except INPUT_ERRORS as exc:
        code, error = EXIT_INPUT, f"{type(exc).__name__}: {exc}"
    except CalibrationFailed as exc:
        code, error = EXIT_CALIBRATION, str(exc)
    except Exception as exc:  # noqa: BLE001 - any other failure is a runtime error
        code, error = EXIT_RUNTIME, f"{type(exc).__name__}: {exc}"
    if error:
        print(f"tbsim: error: {error}", file=sys.stderr)
    run.manifest(code, error)
    return code


if __name__ == "__main__":
    sys.exit(main())
