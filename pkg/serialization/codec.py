"""
Translation between structure files and kernel objects
"""
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import TypeAdapter

from algebra.coeffring import DerivationPair, Element, FreeModule, LinearMap, Ring, VectorField, format_fraction
from algebra.cohomology import Cochain, RepresentationData
from algebra.crossed import CrossedExtensionData, CrossedModuleData
from algebra.errors import MalformedTableError, RingMismatchError, UnsupportedError
from algebra.extensions import ExtensionData
from algebra.rmatrix import RMatrix
from algebra.structures import (
    ActionData,
    LieAlgebraFD,
    LieRinehartData,
    PreLieAlgebraFD,
    PreLieRinehartData,
)
from algebra.twoalg import Lie2Data, PreLie2Data
from serialization import schemas

logger = logging.getLogger(__name__)

_ADAPTER = TypeAdapter(schemas.StructureFile)


@dataclass
class RMatrixInput:
    """Lie algebra, its action and an r-matrix, as read from an rmatrix_input file"""
    lie: LieAlgebraFD
    action: ActionData
    r: RMatrix


# ============= LOW-LEVEL PIECES =============
def ring_from(schema: schemas.RingSchema) -> Ring:
    return Ring(tuple(schema.vars), schema.laurent)


def ring_to(ring: Ring) -> schemas.RingSchema:
    return schemas.RingSchema(vars=list(ring.variables), laurent=ring.laurent)


def element_to(value: Element) -> List[str]:
    return [str(c) for c in value.coeffs]


def rows_from(domain: FreeModule, codomain: FreeModule, rows: schemas.Rows) -> LinearMap:
    return LinearMap(domain, codomain, rows)


def rows_to(f: LinearMap) -> schemas.Rows:
    return [[str(c) for c in row] for row in f.rows]


def table_from(entries: Sequence[schemas.TableEntry]) -> Dict[Tuple[int, ...], List[str]]:
    table = {}
    for entry in entries:
        key = tuple(entry.key)
        if key in table:
            raise MalformedTableError(f"duplicate table key {key}")
        table[key] = entry.value
    return table


def table_to(table: Mapping[Tuple[int, ...], Element]) -> List[schemas.TableEntry]:
    return [schemas.TableEntry(key=list(k), value=element_to(v)) for k, v in sorted(table.items())]


def anchor_from(ring: Ring, rows: Optional[schemas.Rows]) -> List[VectorField]:
    return [VectorField(ring, comps) for comps in (rows or [])]


def anchor_to(anchor: Sequence[VectorField]) -> Optional[schemas.Rows]:
    if all(vf.is_zero() for vf in anchor):
        return None
    return [[str(c) for c in vf.components] for vf in anchor]


def _vector_table_to(table: Mapping[Tuple[int, int], Sequence]) -> List[schemas.TableEntry]:
    return [schemas.TableEntry(key=list(k), value=[format_fraction(c) for c in v]) for k, v in sorted(table.items())]


# ============= ALGEBRAS =============
def prelie_rinehart_from(doc: schemas.PreLieRinehartFile) -> PreLieRinehartData:
    ring = ring_from(doc.ring)
    module = FreeModule(ring, tuple(doc.basis))
    return PreLieRinehartData(module, table_from(doc.product), anchor_from(ring, doc.anchor))


def prelie_rinehart_to(alg: PreLieRinehartData) -> schemas.PreLieRinehartFile:
    return schemas.PreLieRinehartFile(
        ring=ring_to(alg.ring),
        basis=list(alg.module.basis_names),
        product=table_to(alg.product),
        anchor=anchor_to(alg.anchor),
    )


def lie_rinehart_from(doc: schemas.LieRinehartFile) -> LieRinehartData:
    ring = ring_from(doc.ring)
    module = FreeModule(ring, tuple(doc.basis))
    return LieRinehartData(module, table_from(doc.bracket), anchor_from(ring, doc.anchor))


def lie_rinehart_to(alg: LieRinehartData) -> schemas.LieRinehartFile:
    return schemas.LieRinehartFile(
        ring=ring_to(alg.ring),
        basis=list(alg.module.basis_names),
        bracket=table_to(alg.bracket_table),
        anchor=anchor_to(alg.anchor),
    )


def _algebra_from(doc: Union[schemas.PreLieRinehartFile, schemas.LieRinehartFile]):
    if isinstance(doc, schemas.PreLieRinehartFile):
        return prelie_rinehart_from(doc)
    return lie_rinehart_from(doc)


def _algebra_to(alg: Union[PreLieRinehartData, LieRinehartData]):
    if isinstance(alg, PreLieRinehartData):
        return prelie_rinehart_to(alg)
    return lie_rinehart_to(alg)


def lie_algebra_from(doc: schemas.LieAlgebraFile) -> LieAlgebraFD:
    return LieAlgebraFD(doc.basis, table_from(doc.bracket))


def lie_algebra_to(lie: LieAlgebraFD) -> schemas.LieAlgebraFile:
    return schemas.LieAlgebraFile(basis=list(lie.basis_names), bracket=_vector_table_to(lie.bracket))


def prelie_algebra_from(doc: schemas.PreLieAlgebraFile) -> PreLieAlgebraFD:
    return PreLieAlgebraFD(doc.basis, table_from(doc.product))


def prelie_algebra_to(alg: PreLieAlgebraFD) -> schemas.PreLieAlgebraFile:
    return schemas.PreLieAlgebraFile(basis=list(alg.basis_names), product=_vector_table_to(alg.product))


def action_from(doc: schemas.ActionFile) -> ActionData:
    ring = ring_from(doc.ring)
    if isinstance(doc.algebra, schemas.LieAlgebraFile):
        algebra = lie_algebra_from(doc.algebra)
    else:
        algebra = prelie_algebra_from(doc.algebra)
    return ActionData(algebra, ring, anchor_from(ring, doc.images))


def action_to(action: ActionData) -> schemas.ActionFile:
    if isinstance(action.algebra, LieAlgebraFD):
        algebra = lie_algebra_to(action.algebra)
    else:
        algebra = prelie_algebra_to(action.algebra)
    return schemas.ActionFile(
        algebra=algebra,
        ring=ring_to(action.ring),
        images=[[str(c) for c in vf.components] for vf in action.images],
    )


# ============= REPRESENTATIONS AND COCHAINS =============
def _structure_maps_from(alg, target: FreeModule, rho: List[schemas.Rows], symbols: Optional[schemas.Rows],
                         mu: Optional[List[schemas.Rows]]) -> RepresentationData:
    if len(rho) != alg.rank:
        raise MalformedTableError(f"{len(rho)} rho matrices for rank {alg.rank}")
    fields = anchor_from(alg.ring, symbols) if symbols is not None else list(alg.anchor)
    if len(fields) != alg.rank:
        raise MalformedTableError(f"{len(fields)} rho symbols for rank {alg.rank}")
    pairs = [DerivationPair(rows_from(target, target, rows), vf) for rows, vf in zip(rho, fields)]
    maps = [rows_from(target, target, rows) for rows in mu] if mu is not None else None
    return RepresentationData(alg, target, pairs, maps)


def representation_from(doc: schemas.RepresentationFile) -> RepresentationData:
    alg = _algebra_from(doc.algebra)
    target = FreeModule(alg.ring, tuple(doc.target_basis))
    return _structure_maps_from(alg, target, doc.rho, doc.symbols, doc.mu)


def representation_to(rep: RepresentationData) -> schemas.RepresentationFile:
    symbols = [dp.symbol for dp in rep.rho]
    return schemas.RepresentationFile(
        algebra=_algebra_to(rep.algebra),
        target_basis=list(rep.target.basis_names),
        rho=[rows_to(dp.linear_part) for dp in rep.rho],
        symbols=None if tuple(symbols) == tuple(rep.algebra.anchor) else [[str(c) for c in vf.components] for vf in symbols],
        mu=[rows_to(f) for f in rep.mu] if rep.mu is not None else None,
    )


def cochain_from(doc: schemas.CochainFile) -> Cochain:
    return Cochain(doc.complex, doc.degree, representation_from(doc.representation), table_from(doc.values))


def cochain_to(c: Cochain) -> schemas.CochainFile:
    return schemas.CochainFile(
        complex=c.kind,
        degree=c.degree,
        representation=representation_to(c.rep),
        values=table_to(c.values),
    )


# ============= EXTENSIONS AND CROSSED MODULES =============
def extension_from(doc: schemas.ExtensionFile) -> ExtensionData:
    quotient = prelie_rinehart_from(doc.quotient)
    kernel = prelie_rinehart_from(doc.kernel)
    if quotient.ring != kernel.ring:
        raise RingMismatchError("quotient and kernel over different rings")
    rep = _structure_maps_from(quotient, kernel.module, doc.rho, None, doc.mu)
    return ExtensionData(quotient, kernel, rep, Cochain("prelie", 2, rep, table_from(doc.cocycle)))


def extension_to(x: ExtensionData) -> schemas.ExtensionFile:
    return schemas.ExtensionFile(
        quotient=prelie_rinehart_to(x.quotient),
        kernel=prelie_rinehart_to(x.kernel),
        rho=[rows_to(dp.linear_part) for dp in x.rep.rho],
        mu=[rows_to(f) for f in x.rep.mu],
        cocycle=table_to(x.omega.values),
    )


def crossed_module_from(doc: schemas.CrossedModuleFile) -> CrossedModuleData:
    base = prelie_rinehart_from(doc.base)
    top = FreeModule(base.ring, tuple(doc.top_basis))
    rep = _structure_maps_from(base, top, doc.rho, None, doc.mu)
    boundary = rows_from(top, base.module, doc.boundary)
    return CrossedModuleData(base, top, table_from(doc.top_product), boundary, rep)


def crossed_module_to(cm: CrossedModuleData) -> schemas.CrossedModuleFile:
    return schemas.CrossedModuleFile(
        base=prelie_rinehart_to(cm.base),
        top_basis=list(cm.top.basis_names),
        top_product=table_to(cm.top_product),
        boundary=rows_to(cm.boundary),
        rho=[rows_to(dp.linear_part) for dp in cm.rep.rho],
        mu=[rows_to(f) for f in cm.rep.mu],
    )


def crossed_extension_from(doc: schemas.CrossedExtensionFile) -> CrossedExtensionData:
    cm = crossed_module_from(doc.crossed_module)
    quotient = prelie_rinehart_from(doc.quotient)
    base = cm.base.module
    ring = base.ring
    if quotient.ring != ring:
        raise RingMismatchError("quotient over a different ring")
    if any(not 0 <= i < base.rank for i in doc.image_indices):
        raise MalformedTableError(f"image indices {doc.image_indices} out of range")
    image = FreeModule(ring, tuple(base.basis_names[i] for i in doc.image_indices))
    kernel = FreeModule(ring, tuple(doc.kernel_basis))
    return CrossedExtensionData(
        cm,
        quotient,
        rows_from(base, quotient.module, doc.projection),
        rows_from(quotient.module, base, doc.section),
        doc.image_indices,
        rows_from(image, cm.top, doc.sigma),
        kernel,
        rows_from(kernel, cm.top, doc.kernel_inclusion),
    )


def crossed_extension_to(xd: CrossedExtensionData) -> schemas.CrossedExtensionFile:
    return schemas.CrossedExtensionFile(
        crossed_module=crossed_module_to(xd.cm),
        quotient=prelie_rinehart_to(xd.quotient),
        projection=rows_to(xd.projection),
        section=rows_to(xd.section),
        image_indices=list(xd.image_indices),
        sigma=rows_to(xd.sigma),
        kernel_basis=list(xd.kernel_basis.basis_names),
        kernel_inclusion=rows_to(xd.kernel_inclusion),
    )


# ============= 2-ALGEBRAS =============
def two_algebra_from(doc: schemas.TwoAlgebraFile) -> PreLie2Data:
    ring = ring_from(doc.ring)
    p0 = FreeModule(ring, tuple(doc.p0))
    p1 = FreeModule(ring, tuple(doc.p1))
    return PreLie2Data(
        p0, p1, rows_from(p1, p0, doc.m1),
        table_from(doc.m2_00), table_from(doc.m2_01), table_from(doc.m2_10), table_from(doc.m3),
        anchor_from(ring, doc.anchor),
    )


def two_algebra_to(x: PreLie2Data) -> schemas.TwoAlgebraFile:
    return schemas.TwoAlgebraFile(
        ring=ring_to(x.ring),
        p0=list(x.p0.basis_names),
        p1=list(x.p1.basis_names),
        m1=rows_to(x.m1),
        m2_00=table_to(x.m2_00),
        m2_01=table_to(x.m2_01),
        m2_10=table_to(x.m2_10),
        m3=table_to(x.m3),
        anchor=anchor_to(x.anchor),
    )


def lie_two_algebra_from(doc: schemas.LieTwoAlgebraFile) -> Lie2Data:
    ring = ring_from(doc.ring)
    p0 = FreeModule(ring, tuple(doc.p0))
    p1 = FreeModule(ring, tuple(doc.p1))
    return Lie2Data(
        p0, p1, rows_from(p1, p0, doc.l1),
        table_from(doc.l2_00), table_from(doc.l2_01), table_from(doc.l3),
        anchor_from(ring, doc.anchor),
    )


def lie_two_algebra_to(x: Lie2Data) -> schemas.LieTwoAlgebraFile:
    return schemas.LieTwoAlgebraFile(
        ring=ring_to(x.ring),
        p0=list(x.p0.basis_names),
        p1=list(x.p1.basis_names),
        l1=rows_to(x.l1),
        l2_00=table_to(x.l2_00),
        l2_01=table_to(x.l2_01),
        l3=table_to(x.l3),
        anchor=anchor_to(x.anchor),
    )


def rmatrix_input_from(doc: schemas.RMatrixInputFile) -> RMatrixInput:
    lie = lie_algebra_from(doc.lie)
    action = action_from(doc.action)
    if action.algebra != lie:
        raise MalformedTableError("the action is not by the given Lie algebra")
    return RMatrixInput(lie, action, RMatrix.from_list(lie, doc.r))


def rmatrix_input_to(data: RMatrixInput) -> schemas.RMatrixInputFile:
    return schemas.RMatrixInputFile(
        lie=lie_algebra_to(data.lie),
        action=action_to(data.action),
        r=[format_fraction(c) for c in data.r.as_list()],
    )


# ============= DOCUMENTS =============
_FROM = {
    "prelie_rinehart": prelie_rinehart_from,
    "lie_rinehart": lie_rinehart_from,
    "lie_algebra": lie_algebra_from,
    "pre_lie_algebra": prelie_algebra_from,
    "action": action_from,
    "representation": representation_from,
    "cochain": cochain_from,
    "extension": extension_from,
    "crossed_module": crossed_module_from,
    "crossed_extension": crossed_extension_from,
    "two_algebra": two_algebra_from,
    "lie_two_algebra": lie_two_algebra_from,
    "rmatrix_input": rmatrix_input_from,
}

_TO = (
    (PreLieRinehartData, prelie_rinehart_to),
    (LieRinehartData, lie_rinehart_to),
    (LieAlgebraFD, lie_algebra_to),
    (PreLieAlgebraFD, prelie_algebra_to),
    (ActionData, action_to),
    (RepresentationData, representation_to),
    (Cochain, cochain_to),
    (ExtensionData, extension_to),
    (CrossedModuleData, crossed_module_to),
    (CrossedExtensionData, crossed_extension_to),
    (PreLie2Data, two_algebra_to),
    (Lie2Data, lie_two_algebra_to),
    (RMatrixInput, rmatrix_input_to),
)


def to_schema(obj: Any):
    for cls, convert in _TO:
        if isinstance(obj, cls):
            return convert(obj)
    raise UnsupportedError(f"no file format for {type(obj).__name__}")


def parse_document(text: str) -> Tuple[str, Any]:
    """
    Validate a structure file and build its kernel object

    Args:
        text: JSON text with a top-level "kind"

    Returns:
        (kind, kernel object)
    """
    doc = _ADAPTER.validate_json(text)
    logger.debug("parsed %s document", doc.kind)
    return doc.kind, _FROM[doc.kind](doc)


def load_document(path: Union[str, Path]) -> Tuple[str, Any]:
    return parse_document(Path(path).read_text(encoding="utf-8"))


def dump_document(obj: Any) -> str:
    """Canonical JSON text: fixed key order, sorted tables, two-space indent"""
    doc = to_schema(obj)
    data = doc.model_dump(mode="json", exclude_none=True)
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def write_document(obj: Any, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_document(obj), encoding="utf-8")
