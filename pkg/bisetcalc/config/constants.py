"""Application constants."""

# Size caps
DEFAULT_MAX_GROUP_ORDER = 24
DEFAULT_BOUND = 6
DEFAULT_DEGREE_CAP = 16
DEFAULT_WORKERS = 4
DEFAULT_FIXTURE_GROUP_CAP = 8
DEFAULT_FIXTURE_SIZE_CAP = 8
SLICE_CACHE_SIZE = 2048  # per cached construction
TRIANGLE_SIZE_CAP = 8  # largest f•A whose unit triangle is checked

# Shipped group fixtures, in corpus order
FIXTURE_GROUPS = ["e", "C2", "C3", "C4", "C2xC2", "S3"]

# Law identifiers accepted by `verify`
LAW_IDS = {
    "der1": "bicoproducts go to products of slice categories",
    "der2": "isomorphisms are detected fiberwise and orbitwise",
    "der3": "adjoint triplet plus ⊣ star ⊣ bullet",
    "der4": "base change along bipullbacks",
    "mackey": "Omega squares around bipullbacks commute",
    "tambara": "partial exponential square commutes",
    "semi-mackey": "additivity and double squares over the corpus",
    "bipullback": "universal property of bipullbacks",
    "bicoproduct": "universal property of bicoproducts",
}

# CLI exit codes
EXIT_OK = 0
EXIT_LAW_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_MISMATCH = 3
EXIT_UNKNOWN_GROUP = 4
EXIT_COMPUTATION_ERROR = 5

# Error messages
ERROR_MESSAGES = {
    "not_associative": "Multiplication is not associative at ({a}, {b}, {c})",
    "no_identity": "Element 0 is not a two-sided identity",
    "no_inverse": "Element {g} has no two-sided inverse",
    "not_normal": "Subgroup is not normal: {g}·{n}·{g}⁻¹ leaves it",
    "not_injective": "Homomorphism is not injective: {g} and {h} have the same image",
    "unknown_group": "Unknown group '{name}'. Known groups: {known}",
    "order_exceeded": "Group order {order} exceeds the configured cap {cap}",
}
