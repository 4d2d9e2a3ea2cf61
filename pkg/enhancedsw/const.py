"""Constants for the enhancedsw library."""

# Ambient guard: (n+1)^r above this is refused (worst case ~65k unknowns).
DEFAULT_MAX_AMBIENT = 256
DEFAULT_SEED = 0

# Passed to sympy's DomainMatrix.rref: fraction-free elimination, normalized to RREF.
RREF_METHOD = "FF"

GROUP_FULL = "full"
GROUP_LEVI = "levi"
GROUP_PARABOLIC = "parabolic"
GROUP_UNIPOTENT = "unipotent"
GROUP_KINDS = (GROUP_FULL, GROUP_LEVI, GROUP_PARABOLIC, GROUP_UNIPOTENT)

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_REPORT_ONLY = "report-only"
STATUS_SKIPPED = "skipped"

CHECK_DDHA_RELATIONS = "ddha-relations"
CHECK_CLASSICAL = "classical"
CHECK_LEVI = "levi"
CHECK_PARABOLIC = "parabolic"
CHECK_MAIN_THEOREM = "main-theorem"
CHECK_STRUCTURE_LEMMA = "structure-lemma"
CHECK_KEY_LEMMA = "key-lemma"
CHECK_INVARIANTS = "invariants"
CHECK_ALL = "all"

# Execution and report order.
CHECK_NAMES = (
    CHECK_DDHA_RELATIONS,
    CHECK_CLASSICAL,
    CHECK_LEVI,
    CHECK_PARABOLIC,
    CHECK_MAIN_THEOREM,
    CHECK_STRUCTURE_LEMMA,
    CHECK_KEY_LEMMA,
    CHECK_INVARIANTS,
)

FORMAT_JSON = "json"
FORMAT_CSV = "csv"
FORMAT_TABLE = "table"
OUTPUT_FORMATS = (FORMAT_JSON, FORMAT_CSV, FORMAT_TABLE)

RECORD_FIELDS = (
    "check",
    "n",
    "r",
    "status",
    "lhs_dim",
    "rhs_dim",
    "detail",
    "elapsed_ms",
    "witness",
)

STRICT_INCLUSION = "⊊"
EQUALITY = "="

EXIT_OK = 0
EXIT_ASSERTION_FAILED = 1
EXIT_USAGE = 2
