"""Audit case definitions."""

from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from ..config import ToolkitConfig

# A check draws from the seeded generator and returns (passed, issues)
CheckFn = Callable[[np.random.Generator, ToolkitConfig], tuple[bool, list[str]]]


@dataclass
class AuditCase:
    """A single property check of the toolkit.

    Attributes:
        name: Short stable identifier (used as the JSON key)
        description: Human-readable description of the property
        check: Function taking a seeded generator and the config, returning (passed, issues)
        seed: Seed for numpy.random.default_rng
        notes: Optional markdown shown in the HTML report
        metadata: Optional metadata dict for custom tracking/reporting
    """

    name: str
    description: str
    check: CheckFn
    seed: int = 0
    notes: str = ""
    metadata: dict | None = None


@dataclass
class AuditResult:
    """Result of running a single audit case.

    Attributes:
        case: The original audit case
        passed: Whether the property held
        elapsed: Wall time in seconds
        issues: Violations found
        error: Exception message if the check raised
    """

    case: AuditCase
    passed: bool
    elapsed: float = 0.0
    issues: list[str] = field(default_factory=list)
    error: str | None = None
