from .partition_validator import PartitionValidator, is_clique, validate_partition
from .validation_rules import ValidationRules

__all__ = ["PartitionValidator", "ValidationRules", "is_clique", "validate_partition"]
