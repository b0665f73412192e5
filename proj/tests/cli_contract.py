"""Exit-code and determinism contract of the lehmer CLI."""
import os
import subprocess
import sys
import tempfile

CLI = sys.argv[1]
failures = []


def run(*args, env=None):
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=env)


def expect(args, code, needle=None, stream="stdout"):
    r = run(*args)
    text = r.stdout if stream == "stdout" else r.stderr
    if r.returncode != code or (needle is not None and needle not in text):
        failures.append(f"{args}: exit {r.returncode} (want {code}), {stream}={text!r}")


expect(["frobnicate"], 2, "frobnicate", "stderr")
expect(["psi", "--bogus", "1"], 2, "--bogus", "stderr")
expect(["psi", "--group", "C2 x X3"], 2, "position", "stderr")
expect(["psi", "--group", "D5"], 2, None, "stderr")
expect(["min-k", "--profile", "4|n"], 2, "4", "stderr")
expect(["lehmer-check", "1"], 2)
expect(["verify-constants"], 0)
expect(["--format", "json", "psi", "--group", "C2 x C2 x C15"], 0, '"psi":')
expect(["--format", "json", "lehmer-check", "561"], 0, '"min_k":4')
expect(["lehmer-check", "561", "--format", "json"], 0, '"min_k":4')
expect(["psi"], 2, "--group", "stderr")
expect([], 2, "Subcommands", "stderr")
expect(["bounds", "--group", "C2 x C2"], 0, "noncyclic-general")
expect(["carmichael", "561"], 0, "Carmichael")
expect(["carmichael", "--from", "2", "--to", "100000"], 0, "# 16 Carmichael")
expect(["min-k", "--profile", "3|n"], 0, "min k: 4")
expect(["min-k", "--profile", "generic"], 0, "min k: 3")

# Machine formats are byte-identical across runs and worker counts.
outs = set()
for jobs in ("1", "3"):
    env = dict(os.environ, LEHMER_JOBS=jobs)
    outs.add(run("--format", "json", "scan", "--from", "2", "--to", "200000", env=env).stdout)
    outs.add(run("--format", "json", "scan", "--from", "2", "--to", "200000", "--jobs", jobs).stdout)
if len(outs) != 1:
    failures.append("scan JSON output differs between runs")

with tempfile.TemporaryDirectory() as tmp:
    report = os.path.join(tmp, "batch.jsonl")
    expect(["--format", "json", "batch", "--bound", "100000", "--out", report], 0, "16 verdicts")
    with open(report) as fh:
        lines = fh.read().splitlines()
    if len(lines) != 17 or not lines[-1].startswith('{"type":"summary"'):
        failures.append(f"batch report has {len(lines)} lines")
    bad = os.path.join(tmp, "cp.json")
    with open(bad, "w") as fh:
        fh.write('{"payload":{},"crc32":0}')
    expect(["scan", "--from", "2", "--to", "1000", "--checkpoint", bad], 1, "checkpoint", "stderr")

for f in failures:
    print("FAIL", f)
print("cli contract:", "ok" if not failures else f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
