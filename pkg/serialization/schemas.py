"""
Pydantic schemas for structure files

Polynomials are canonical strings over the file's ring, elements are lists of
coefficient strings, maps are lists of rows, and tables are lists of
{key, value} entries sorted by key.
"""
from pydantic import BaseModel, Field
from typing import Annotated, List, Literal, Optional, Union


class RingSchema(BaseModel):
    vars: List[str] = Field(default_factory=list)
    laurent: bool = False


class TableEntry(BaseModel):
    key: List[int]
    value: List[str]


Rows = List[List[str]]


# Algebra Schemas
class PreLieRinehartFile(BaseModel):
    kind: Literal["prelie_rinehart"] = "prelie_rinehart"
    ring: RingSchema = Field(default_factory=RingSchema)
    basis: List[str]
    product: List[TableEntry] = Field(default_factory=list)
    anchor: Optional[Rows] = None


class LieRinehartFile(BaseModel):
    kind: Literal["lie_rinehart"] = "lie_rinehart"
    ring: RingSchema = Field(default_factory=RingSchema)
    basis: List[str]
    bracket: List[TableEntry] = Field(default_factory=list)
    anchor: Optional[Rows] = None


class LieAlgebraFile(BaseModel):
    kind: Literal["lie_algebra"] = "lie_algebra"
    basis: List[str]
    bracket: List[TableEntry] = Field(default_factory=list)


class PreLieAlgebraFile(BaseModel):
    kind: Literal["pre_lie_algebra"] = "pre_lie_algebra"
    basis: List[str]
    product: List[TableEntry] = Field(default_factory=list)


class ActionFile(BaseModel):
    kind: Literal["action"] = "action"
    algebra: Annotated[Union[LieAlgebraFile, PreLieAlgebraFile], Field(discriminator="kind")]
    ring: RingSchema
    images: Rows


# Representation and Cochain Schemas
class RepresentationFile(BaseModel):
    kind: Literal["representation"] = "representation"
    algebra: Annotated[Union[PreLieRinehartFile, LieRinehartFile], Field(discriminator="kind")]
    target_basis: List[str]
    rho: List[Rows]
    symbols: Optional[Rows] = None
    mu: Optional[List[Rows]] = None


class CochainFile(BaseModel):
    kind: Literal["cochain"] = "cochain"
    complex: Literal["prelie", "lie"]
    degree: int = Field(ge=1)
    representation: RepresentationFile
    values: List[TableEntry] = Field(default_factory=list)


# Extension Schemas
class ExtensionFile(BaseModel):
    kind: Literal["extension"] = "extension"
    quotient: PreLieRinehartFile
    kernel: PreLieRinehartFile
    rho: List[Rows]
    mu: List[Rows]
    cocycle: List[TableEntry] = Field(default_factory=list)


class CrossedModuleFile(BaseModel):
    kind: Literal["crossed_module"] = "crossed_module"
    base: PreLieRinehartFile
    top_basis: List[str]
    top_product: List[TableEntry] = Field(default_factory=list)
    boundary: Rows
    rho: List[Rows]
    mu: List[Rows]


class CrossedExtensionFile(BaseModel):
    kind: Literal["crossed_extension"] = "crossed_extension"
    crossed_module: CrossedModuleFile
    quotient: PreLieRinehartFile
    projection: Rows
    section: Rows
    image_indices: List[int]
    sigma: Rows
    kernel_basis: List[str]
    kernel_inclusion: Rows


# 2-Algebra Schemas
class TwoAlgebraFile(BaseModel):
    kind: Literal["two_algebra"] = "two_algebra"
    ring: RingSchema = Field(default_factory=RingSchema)
    p0: List[str]
    p1: List[str]
    m1: Rows
    m2_00: List[TableEntry] = Field(default_factory=list)
    m2_01: List[TableEntry] = Field(default_factory=list)
    m2_10: List[TableEntry] = Field(default_factory=list)
    m3: List[TableEntry] = Field(default_factory=list)
    anchor: Optional[Rows] = None


class LieTwoAlgebraFile(BaseModel):
    kind: Literal["lie_two_algebra"] = "lie_two_algebra"
    ring: RingSchema = Field(default_factory=RingSchema)
    p0: List[str]
    p1: List[str]
    l1: Rows
    l2_00: List[TableEntry] = Field(default_factory=list)
    l2_01: List[TableEntry] = Field(default_factory=list)
    l3: List[TableEntry] = Field(default_factory=list)
    anchor: Optional[Rows] = None


class RMatrixInputFile(BaseModel):
    kind: Literal["rmatrix_input"] = "rmatrix_input"
    lie: LieAlgebraFile
    action: ActionFile
    r: List[str]


StructureFile = Annotated[
    Union[
        PreLieRinehartFile,
        LieRinehartFile,
        LieAlgebraFile,
        PreLieAlgebraFile,
        ActionFile,
        RepresentationFile,
        CochainFile,
        ExtensionFile,
        CrossedModuleFile,
        CrossedExtensionFile,
        TwoAlgebraFile,
        LieTwoAlgebraFile,
        RMatrixInputFile,
    ],
    Field(discriminator="kind"),
]
