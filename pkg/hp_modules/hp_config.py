import os

# ─── SIZE CAPS FOR EXACT ORACLES ──────────────────────────────────────────────
# Brute force over vertex subsets (VC, FVS, IS, DS, BWDS, SIVC, CVC).
BRUTE_VERTEX_CAP = int(os.getenv("HYBRIDPARAM_BRUTE_VERTEX_CAP", "22"))
# Recursive disjoint-structure search for packing problems.
BRUTE_PACKING_CAP = int(os.getenv("HYBRIDPARAM_BRUTE_PACKING_CAP", "14"))
# Subset DP over elimination orders.
TREEWIDTH_EXACT_CAP = int(os.getenv("HYBRIDPARAM_TREEWIDTH_EXACT_CAP", "14"))
# Exhaustive isomorphism checks.
ISO_CAP = int(os.getenv("HYBRIDPARAM_ISO_CAP", "8"))

# ─── LOGGING ──────────────────────────────────────────────────────────────────
LOG_LEVEL = os.getenv("HYBRIDPARAM_LOG_LEVEL", "WARNING").upper()
