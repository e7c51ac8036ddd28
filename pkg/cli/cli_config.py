import os

from hp_modules.hp_problems import ProblemKind

# ─── WORKERS ──────────────────────────────────────────────────────────────────
# Upper bound on bench worker processes; approx --variant guess uses it for threads.
THREADS = max(1, int(os.getenv("HYBRIDPARAM_THREADS", str(os.cpu_count() or 1))))

# ─── DEFAULTS ─────────────────────────────────────────────────────────────────
DEFAULT_EPS_LIST = os.getenv("HYBRIDPARAM_EPS_LIST", "0.1,0.2,0.5")
DEFAULT_SUITE_COUNT = int(os.getenv("HYBRIDPARAM_SUITE_COUNT", "10"))
DEFAULT_LOG_LEVEL = os.getenv("HYBRIDPARAM_LOG_LEVEL", "WARNING").upper()

# ─── EXIT CODES ───────────────────────────────────────────────────────────────
EXIT_OK = 0
EXIT_FAILURE = 1  # validation failure, infeasible instance, internal fault
EXIT_USAGE = 2    # bad arguments, malformed input, unsupported combination

# ─── PROBLEM NAMES ────────────────────────────────────────────────────────────
PROBLEM_NAMES = {kind.value: kind for kind in ProblemKind}
ENGINES = ("brute", "td-dp")
PARAMS = ("mod", "twh")

# ─── REPORTS ──────────────────────────────────────────────────────────────────
# Column order of bench and approx reports; the key set is fixed.
REPORT_KEYS = (
    "instance",
    "problem",
    "param",
    "eps",
    "alg_value",
    "opt_value",
    "ratio",
    "case",
    "time_ms",
    "seed",
)
