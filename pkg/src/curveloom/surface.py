"""Surface specification."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ComplexityTooLow


@dataclass(frozen=True)
class SurfaceSpec:
    """An orientable surface of finite type with punctures."""

    genus: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise ValueError("genus and puncture count must be nonnegative")

    @property
    def xi(self) -> int:
        return 3 * self.genus - 3 + self.punctures

    def require_complexity(self, minimum: int = 2) -> None:
        if self.xi < minimum:
            raise ComplexityTooLow(
                f"xi(S_{{{self.genus},{self.punctures}}}) = {self.xi} < {minimum}")

    def __str__(self):
        return f"S_{{{self.genus},{self.punctures}}}"
