"""
System definitions (the zoo file format).

A definition names its variant with `kind`. Files written as
`{"alphabet": k, "matrix": [...]}` or `{"alphabet": k, "forbidden": [...]}`
may leave `kind` out; the variant is then read off the keys present.
"""

from typing import Annotated, Any, List, Literal, Optional, Union

from pydantic import AliasChoices, BaseModel, Discriminator, Field, Tag, model_validator


class SystemSpecBase(BaseModel):
    name: Optional[str] = Field(None, description="Display name")


class FullShiftSpec(SystemSpecBase):
    kind: Literal["full_shift"] = "full_shift"
    symbols: int = Field(2, ge=1, description="Alphabet size k")


class MatrixSpec(SystemSpecBase):
    kind: Literal["matrix"] = "matrix"
    alphabet: Optional[int] = Field(None, ge=1, description="Alphabet size, must match the matrix when given")
    matrix: List[List[int]] = Field(..., description="0/1 transition matrix")
    labels: Optional[List[str]] = None

    @model_validator(mode="after")
    def _alphabet_matches(self) -> "MatrixSpec":
        if self.alphabet is not None and self.alphabet != len(self.matrix):
            raise ValueError(f"alphabet {self.alphabet} does not match a {len(self.matrix)}-row matrix")
        return self


class ForbiddenWordsSpec(SystemSpecBase):
    kind: Literal["forbidden_words"] = "forbidden_words"
    alphabet_size: int = Field(2, ge=1, validation_alias=AliasChoices("alphabet_size", "alphabet"))
    forbidden: List[Union[str, List[int]]] = Field(..., description="Forbidden words, e.g. \"11\"")


class OdometerProductSpec(SystemSpecBase):
    kind: Literal["product_with_odometer"] = "product_with_odometer"
    depth: int = Field(..., ge=0, le=10, description="Odometer approximated on Z / 2^depth")
    symbols: int = Field(2, ge=1, description="Alphabet size of the full-shift factor")


class MarkovMapSpec(SystemSpecBase):
    kind: Literal["markov_map"] = "markov_map"
    map: str = Field(..., description="tent_slope2 or doubling")
    grid: int = Field(2, ge=2, description="Number of equal partition intervals")


def system_kind(data: Any) -> Optional[str]:
    """Variant tag of a definition: its `kind`, else inferred from `matrix` or `forbidden`."""
    if isinstance(data, SystemSpecBase):
        return getattr(data, "kind", None)
    if not isinstance(data, dict):
        return None
    if "kind" in data:
        return data["kind"]
    if "matrix" in data:
        return "matrix"
    if "forbidden" in data:
        return "forbidden_words"
    return None


SystemSpec = Annotated[
    Union[
        Annotated[FullShiftSpec, Tag("full_shift")],
        Annotated[MatrixSpec, Tag("matrix")],
        Annotated[ForbiddenWordsSpec, Tag("forbidden_words")],
        Annotated[OdometerProductSpec, Tag("product_with_odometer")],
        Annotated[MarkovMapSpec, Tag("markov_map")],
    ],
    Discriminator(system_kind),
]
