"""Data models for enhancedsw runs."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .const import (
    CHECK_ALL,
    CHECK_NAMES,
    DEFAULT_MAX_AMBIENT,
    DEFAULT_SEED,
    FORMAT_JSON,
    OUTPUT_FORMATS,
    RECORD_FIELDS,
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_SKIPPED,
)
from .exceptions import ConfigError, SizingError, UnknownCheckError


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one check on one (n, r) cell."""

    check: str
    n: int
    r: int
    status: str
    lhs_dim: int | None = None
    rhs_dim: int | None = None
    detail: str = ""
    elapsed_ms: int = 0
    witness: str | None = None
    # "⊊" or "=" for the psi ⊆ D^V comparison; not part of the record.
    relation: str | None = field(default=None, compare=False)

    @property
    def passed(self) -> bool:
        """True if the check was asserted and held."""
        return self.status == STATUS_PASS

    @property
    def asserted(self) -> bool:
        """True if the status carries pass/fail semantics."""
        return self.status in (STATUS_PASS, STATUS_FAIL)

    @property
    def failed(self) -> bool:
        """True if an asserted check did not hold."""
        return self.status == STATUS_FAIL

    @classmethod
    def skipped(cls, check: str, n: int, r: int, detail: str) -> CheckResult:
        """Create a record for a check that was not run."""
        return cls(check=check, n=n, r=r, status=STATUS_SKIPPED, detail=detail)

    def to_dict(self, include_timing: bool = False) -> dict[str, Any]:
        """Return the record in the fixed field order."""
        return {
            name: getattr(self, name)
            for name in RECORD_FIELDS
            if include_timing or name != "elapsed_ms"
        }


@dataclass(frozen=True)
class DimensionTable:
    """Dimensions of the algebras attached to one (n, r) cell."""

    n: int
    r: int
    psi: int
    dnr: int
    dnr_by_degree: tuple[int, ...]
    dv: int
    end_full: int
    end_levi: int
    end_parabolic: int
    end_unipotent: int
    invariants: int

    def to_dict(self) -> dict[str, Any]:
        """Return a flat mapping, one key per degree for D(n,r)_l."""
        data: dict[str, Any] = {
            "n": self.n,
            "r": self.r,
            "psi": self.psi,
            "dnr": self.dnr,
        }
        for degree, dim in enumerate(self.dnr_by_degree):
            data[f"dnr_{degree}"] = dim
        data.update(
            dv=self.dv,
            end_full=self.end_full,
            end_levi=self.end_levi,
            end_parabolic=self.end_parabolic,
            end_unipotent=self.end_unipotent,
            invariants=self.invariants,
        )
        return data


def parse_range(text: str) -> tuple[int, ...]:
    """Parse ``A..B`` (or a single integer) into the inclusive range.

    Raises:
        ConfigError: If the text is malformed or the range is empty.
    """
    start, sep, stop = text.partition("..")
    try:
        low = int(start)
        high = int(stop) if sep else low
    except ValueError as err:
        raise ConfigError(f"Invalid range {text!r}; expected A..B") from err
    if low > high:
        raise ConfigError(f"Empty range {text!r}")
    return tuple(range(low, high + 1))


def parse_checks(checks: str | Iterable[str]) -> tuple[str, ...]:
    """Expand ``all`` and order check names.

    Raises:
        UnknownCheckError: If a name is not a known check.
    """
    names = checks.split(",") if isinstance(checks, str) else list(checks)
    requested = {name.strip() for name in names if name.strip()}
    if not requested:
        raise ConfigError("No checks requested")
    unknown = sorted(requested - set(CHECK_NAMES) - {CHECK_ALL})
    if unknown:
        raise UnknownCheckError(
            f"Unknown check(s) {', '.join(unknown)}; expected any of "
            f"{', '.join((*CHECK_NAMES, CHECK_ALL))}"
        )
    if CHECK_ALL in requested:
        return CHECK_NAMES
    return tuple(name for name in CHECK_NAMES if name in requested)


@dataclass(frozen=True)
class RunConfig:
    """Validated options for one CLI run."""

    n_values: tuple[int, ...]
    r_values: tuple[int, ...]
    checks: tuple[str, ...] = CHECK_NAMES
    output_format: str = FORMAT_JSON
    out: Path | None = None
    max_ambient: int = DEFAULT_MAX_AMBIENT
    seed: int = DEFAULT_SEED
    timings: bool = False

    def __post_init__(self) -> None:
        """Validate the grid, format and guard."""
        if not self.n_values or not self.r_values:
            raise ConfigError("Both n and r must be given")
        if min(self.n_values) < 1 or min(self.r_values) < 1:
            raise ConfigError("n and r must be at least 1")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(
                f"Unknown format {self.output_format!r}; expected one of "
                f"{', '.join(OUTPUT_FORMATS)}"
            )
        if self.max_ambient < 1:
            raise ConfigError("max_ambient must be positive")

    @classmethod
    def from_options(
        cls,
        *,
        n: int | None = None,
        r: int | None = None,
        n_range: str | None = None,
        r_range: str | None = None,
        checks: str | Iterable[str] = CHECK_ALL,
        output_format: str = FORMAT_JSON,
        out: str | Path | None = None,
        max_ambient: int = DEFAULT_MAX_AMBIENT,
        seed: int = DEFAULT_SEED,
        timings: bool = False,
    ) -> RunConfig:
        """Create from command-line options.

        A range takes precedence over a single value.

        Raises:
            ConfigError: If an option is missing or malformed.
            UnknownCheckError: If a check name is unknown.
        """
        if n_range is not None:
            n_values = parse_range(n_range)
        elif n is not None:
            n_values = (n,)
        else:
            raise ConfigError("Missing --n or --n-range")
        if r_range is not None:
            r_values = parse_range(r_range)
        elif r is not None:
            r_values = (r,)
        else:
            raise ConfigError("Missing --r or --r-range")
        return cls(
            n_values=n_values,
            r_values=r_values,
            checks=parse_checks(checks),
            output_format=output_format,
            out=Path(out) if out is not None else None,
            max_ambient=max_ambient,
            seed=seed,
            timings=timings,
        )

    @property
    def n(self) -> int:
        """Return n for a single-cell run."""
        return self.n_values[0]

    @property
    def r(self) -> int:
        """Return r for a single-cell run."""
        return self.r_values[0]

    def cells(self) -> list[tuple[int, int]]:
        """Return the (n, r) grid in report order."""
        return [(n, r) for n in self.n_values for r in self.r_values]

    def fits(self, n: int, r: int) -> bool:
        """True if (n+1)^r is within the ambient guard."""
        return (n + 1) ** r <= self.max_ambient

    def require_fits(self, n: int, r: int) -> None:
        """Refuse a cell above the ambient guard.

        Raises:
            SizingError: If (n+1)^r exceeds max_ambient.
        """
        if not self.fits(n, r):
            raise SizingError(
                f"(n+1)^r = {(n + 1) ** r} exceeds max_ambient={self.max_ambient} "
                f"for n={n}, r={r}"
            )
