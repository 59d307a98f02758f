"""Pydantic models for verifier reports and structured command output."""

from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field


class ValidationIssue(BaseModel):
    """One failed constraint of a representation expression."""

    factor_index: int = Field(..., ge=0, description="Position of the offending factor")
    factor: str = Field(..., description="Printed form of the offending factor")
    constraint: str = Field(..., description="The constraint that fails, e.g. 's in (0,1/2)'")
    message: str = Field(..., description="Human-readable diagnostic")


class ValidationReport(BaseModel):
    """Result of checking an expression against the classification constraints."""

    expression: str
    field: Literal["R", "C"]
    valid: bool
    issues: List[ValidationIssue] = Field(default_factory=list)


class LinalgLemmaReport(BaseModel):
    """Outcome of checking that (u+v)^d vanishes only for v = 0."""

    n: int
    d: int
    samples: int = Field(..., description="Number of vectors v checked")
    closed_form: str = Field(..., description="Description of (u+v)^d in terms of v")
    closed_form_ok: bool = Field(..., description="Every sample matched the closed form")
    failures: List[str] = Field(default_factory=list)
    alternative_counterexample: Optional[str] = Field(
        None,
        description="Nonzero v with (u'+v)^d = 0 when u' has d ones starting at (n-d, n-d+1)",
    )
    passed: bool


class ClauseResult(BaseModel):
    name: str
    description: str
    passed: bool
    violations: List[str] = Field(default_factory=list)


class ConditionReport(BaseModel):
    """Clause-by-clause check of the bigrading premises."""

    n: int
    d: int
    variant: str
    bracket: str
    clauses: List[ClauseResult]
    passed: bool


class MonomialClass(BaseModel):
    relevant: bool
    degree: int
    weight: Tuple[int, int]
    histogram: Dict[int, int] = Field(..., description="Factor count per group 1-4")
    k: int = Field(..., description="Factors from the (1,0) block")
    l: int = Field(..., description="Factors from the (0,1) block")


class EnumerationReport(BaseModel):
    name: str
    checked: int
    failures: List[str] = Field(default_factory=list)
    passed: bool


class PremiseReport(BaseModel):
    """Condition check plus the exhaustive monomial enumerations for one (n, d)."""

    n: int
    d: int
    condition: ConditionReport
    enumerations: List[EnumerationReport]
    passed: bool


class AdIdentityCase(BaseModel):
    m: int
    computed: str
    expected: str
    holds: bool


class AdIdentityReport(BaseModel):
    k: int
    cases: List[AdIdentityCase]
    passed: bool


class ShiftLemmaReport(BaseModel):
    """Kernel/cokernel dimensions of the graded map between interleaved chains."""

    kernel_dims: List[int] = Field(..., description="dim Phi^{i-1} - dim F^{i-1}")
    cokernel_dims: List[int] = Field(..., description="dim Phi^i - dim F^i")
    kernel_from_map: List[int]
    cokernel_from_map: List[int]
    passed: bool


class FiltrationSuiteReport(BaseModel):
    ambient_dim: int
    trials: int
    seed: int
    checks: Dict[str, int] = Field(default_factory=dict, description="Checks passed per lemma")
    failures: List[str] = Field(default_factory=list)
    passed: bool


class CommandResult(BaseModel):
    """Structured output of one CLI/API command."""

    verb: str
    input: Dict[str, Any]
    result: Any
    provenance: str
