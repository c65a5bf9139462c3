"""Operators as checkable certificates through the command line."""

import json
import subprocess
import sys


def fdmod(*args):
    proc = subprocess.run([sys.executable, "-m", "fdmod", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


ring = ["-p", "3", "-v", "x,y,z"]
f = "x^2*y + y^2*z + z^3"

code, out, _ = fdmod("chain", *ring, "-f", f)
print(out)

code, out, _ = fdmod("operator", *ring, "-f", f, "--json")
op = json.loads(out)["operator"]
print("level", op["level"], "with", op["normal_form"].count("D["), "divided powers")

# replay the certificate with nothing but polynomial arithmetic
code, out, _ = fdmod("verify", *ring, "-f", f, "--op", op["normal_form"], "-N", str(op["level"]))
print("verify exit code:", code)

# break it and watch it fail
code, out, _ = fdmod("verify", *ring, "-f", f, "--op", op["normal_form"] + " + D[8,0,0]", "-N", str(op["level"]))
print("tampered exit code:", code)

code, _, err = fdmod("chain", "-p", "6", "-v", "x", "-f", "x")
print("bad prime exit code:", code, "|", err.strip())
