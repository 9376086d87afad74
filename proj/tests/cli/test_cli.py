# Copyright 2026 The Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the kopt command line."""

import csv
import io
import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

KOPT = os.environ["KOPT_BIN"]
SCHEMA = os.environ["KOPT_SCHEMA"]


def run(*args, env=None):
    full = dict(os.environ)
    full.pop("KOPT_SEED", None)
    full.update(env or {})
    return subprocess.run([KOPT, *args], capture_output=True, text=True, env=full)


def strip_timings(obj):
    if isinstance(obj, dict):
        return {k: strip_timings(v) for k, v in obj.items()
                if not k.endswith("_ms")}
    if isinstance(obj, list):
        return [strip_timings(v) for v in obj]
    return obj


class CliTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.tmp = tempfile.TemporaryDirectory()
        d = cls.tmp.name
        cls.p3 = os.path.join(d, "p3.txt")
        with open(cls.p3, "w") as f:
            f.write("0 1\n1 2\n")
        cls.ring = os.path.join(d, "ring.txt")
        with open(cls.ring, "w") as f:
            n = 40
            for i in range(n):
                f.write(f"{i} {(i + 1) % n}\n")
                f.write(f"{i} {(i + 7) % n}\n")
        with open(SCHEMA) as f:
            cls.schema = json.load(f)

    @classmethod
    def tearDownClass(cls):
        cls.tmp.cleanup()

    def test_p3_deter(self):
        r = run("run", self.p3, "--algo", "deter", "--k", "1")
        self.assertEqual(r.returncode, 0, r.stderr)
        out = json.loads(r.stdout)
        jsonschema.validate(out, self.schema)
        self.assertEqual(out["steps"][0]["edge"], [0, 2])
        self.assertAlmostEqual(out["steps"][0]["kirchhoff"], 2.0, places=12)
        self.assertAlmostEqual(out["steps"][0]["kirchhoff_per_node"], 2.0 / 3, places=12)

    def test_every_algorithm_matches_schema(self):
        for algo in ["deter", "grad", "approx", "fastgrad", "fastgrad+", "oneconv", "brute"]:
            k = "2" if algo == "brute" else "4"
            r = run("run", self.ring, "-a", algo, "-k", k, "--epsilon", "0.3")
            self.assertEqual(r.returncode, 0, algo + ": " + r.stderr)
            out = json.loads(r.stdout)
            jsonschema.validate(out, self.schema)
            self.assertEqual(out["algo"], algo)
            self.assertEqual(len(out["steps"]), int(k))

    def test_fastgrad_deterministic(self):
        a = run("run", self.ring, "-a", "fastgrad", "-k", "3", "--seed", "9")
        b = run("run", self.ring, "-a", "fastgrad", "-k", "3", "--seed", "9")
        self.assertEqual(a.returncode, 0, a.stderr)
        self.assertEqual(strip_timings(json.loads(a.stdout)), strip_timings(json.loads(b.stdout)))

    def test_seed_env_fallback(self):
        a = run("run", self.ring, "-a", "approx", "-k", "2", env={"KOPT_SEED": "5"})
        b = run("run", self.ring, "-a", "approx", "-k", "2", "--seed", "5")
        self.assertEqual(json.loads(a.stdout)["params"]["seed"], 5)
        self.assertEqual(strip_timings(json.loads(a.stdout)), strip_timings(json.loads(b.stdout)))
        bad = run("run", self.ring, "-k", "2", env={"KOPT_SEED": "x"})
        self.assertEqual(bad.returncode, 2)

    def test_budget_over_candidates(self):
        r = run("run", self.p3, "--k", "2")
        self.assertEqual(r.returncode, 2)
        self.assertIn("exceeds", r.stderr)

    def test_usage_errors(self):
        self.assertEqual(run("run", self.p3, "--algo", "nope").returncode, 2)
        self.assertEqual(run("run", self.p3, "--epsilon", "1.5").returncode, 2)
        self.assertEqual(run("run", self.p3, "--format", "xml").returncode, 2)
        self.assertEqual(run().returncode, 2)

    def test_missing_input_is_runtime_failure(self):
        self.assertEqual(run("run", os.path.join(self.tmp.name, "absent.txt")).returncode, 1)

    def test_csv_output(self):
        path = os.path.join(self.tmp.name, "out.csv")
        r = run("run", self.ring, "-k", "3", "-f", "csv", "-o", path)
        self.assertEqual(r.returncode, 0, r.stderr)
        with open(path) as f:
            rows = list(csv.DictReader(f))
        self.assertEqual(len(rows), 3)
        self.assertEqual(list(rows[0].keys()),
                         ["step", "u", "v", "kirchhoff", "kirchhoff_per_node", "elapsed_ms", "score"])
        ks = [float(r["kirchhoff"]) for r in rows]
        self.assertEqual(ks, sorted(ks, reverse=True))

    def test_prepare(self):
        src = os.path.join(self.tmp.name, "dirty.txt")
        with open(src, "w") as f:
            f.write("# comment\n10 20\n20 30\n")
            for _ in range(10):
                f.write("20 10\n")
            f.write("30 30\n40 50\n")
        out = os.path.join(self.tmp.name, "lcc.txt")
        r = run("prepare", src, "-o", out)
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertIn("dropped: 11", r.stderr)
        self.assertIn("n: 3", r.stderr)
        self.assertIn("m: 2", r.stderr)
        with open(out) as f:
            self.assertEqual(f.read().split(), ["10", "20", "20", "30"])

    def test_prepare_connected_unchanged(self):
        r = run("prepare", self.ring)
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(len(r.stdout.splitlines()), 80)

    def test_labels_survive(self):
        path = os.path.join(self.tmp.name, "labelled.txt")
        with open(path, "w") as f:
            f.write("100 205\n205 317\n")
        out = json.loads(run("run", path, "-k", "1").stdout)
        self.assertEqual(out["steps"][0]["edge"], [100, 317])

    def test_bench(self):
        r = run("bench", self.ring, "--algos", "deter,oneconv", "--ks", "1,2,3,4,5")
        self.assertEqual(r.returncode, 0, r.stderr)
        rows = list(csv.DictReader(io.StringIO(r.stdout)))
        self.assertEqual(len(rows), 10)
        for algo in ["deter", "oneconv"]:
            mine = [row for row in rows if row["algo"] == algo]
            self.assertEqual([int(row["k"]) for row in mine], [1, 2, 3, 4, 5])
            self.assertTrue(all(row["status"] == "ok" and row["graph"] == "ring" for row in mine))

    def test_bench_empty_sweep(self):
        r = run("bench")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(r.stdout, "graph,algo,k,n,m,K_final,K_final_per_node,total_ms,status\n")

    def test_bench_continues_after_failure(self):
        r = run("bench", self.p3, self.ring, "--algos", "deter", "--ks", "2")
        self.assertEqual(r.returncode, 1)
        rows = list(csv.DictReader(io.StringIO(r.stdout)))
        self.assertEqual([row["status"] for row in rows], ["error", "ok"])

    def test_verify_tiny(self):
        r = run("verify", "tiny")
        self.assertEqual(r.returncode, 0, r.stdout)
        self.assertIn("all checks passed", r.stdout)

    def test_verify_fault_injection(self):
        r = run("verify", "tiny", "--inject-fault", "1e-3")
        self.assertEqual(r.returncode, 1)
        self.assertIn("FAIL", r.stdout)


if __name__ == "__main__":
    unittest.main(argv=sys.argv[:1], verbosity=2)
