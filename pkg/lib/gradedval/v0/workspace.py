# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Named entities loaded from one or more config documents.

Sections are validated by the models of `models.py`, then resolved in the order of
`ConfigSections`; every cross reference is checked before anything is computed.
"""
import json
import logging
from typing import Any, Callable, Dict, List, Optional, Tuple

from gradedval.v0.basefield import (
    BaseField,
    PrimeField,
    RationalFunctionField,
    Rationals,
    SimpleExtension,
    parse_automorphism,
)
from gradedval.v0.basevaluation import (
    BaseValuation,
    CompositeValuation,
    GaussValuation,
    PAdicValuation,
    PlaceValuation,
    PrimeIdealValuation,
    TrivialValuation,
)
from gradedval.v0.constants_gradedval import (
    ConfigSections,
    DuplicateNameMessage,
    UnresolvedNameMessage,
)
from gradedval.v0.galois import AutGroup, GradedAutomorphism
from gradedval.v0.gradedfield import FieldExtension, GradedField
from gradedval.v0.gradedval_exceptions import (
    ConfigError,
    MathematicalFailure,
    UnresolvedNameError,
    UsageError,
)
from gradedval.v0.gradedvaluation import GradedValuation, ValuePoint
from gradedval.v0.grading import Lattice, LatticeHom
from gradedval.v0.helper_conf_loader import YamlConfigLoader
from gradedval.v0.helper_enums import FieldKind, ValuationKind
from gradedval.v0.helper_expressions import (
    parse_element,
    parse_exponent_vector,
    parse_field_element,
    parse_polynomial,
)
from gradedval.v0.models import (
    AutomorphismSpec,
    BaseValuationSpec,
    ExtensionSpec,
    FieldSpec,
    GradedFieldSpec,
    GroupSpec,
    LatticeSpec,
    Model,
    ModelSpec,
    ValuationSpec,
)
from gradedval.v0.zrspace import FiniteModel, build_model
from pydantic import ValidationError

# The unique library identifier, never change it
LIBID = "2d4f6a8c0e1b4d3f5a7c9e2b4d6f8a0c"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 1


logger = logging.getLogger(__name__)


SPEC_TYPES = {
    "fields": FieldSpec,
    "lattices": LatticeSpec,
    "graded_fields": GradedFieldSpec,
    "extensions": ExtensionSpec,
    "valuations": ValuationSpec,
    "groups": GroupSpec,
    "models": ModelSpec,
}


class Workspace:
    """Fields, lattices, graded fields, extensions, valuations, groups and models by name."""

    def __init__(self):
        self.specs: Dict[str, Dict[str, Model]] = {section: {} for section in ConfigSections}
        self.sources: Dict[str, str] = {}

        self.fields: Dict[str, BaseField] = {}
        self.lattices: Dict[str, Lattice] = {}
        self.graded_fields: Dict[str, GradedField] = {}
        self.extensions: Dict[str, FieldExtension] = {}
        self.valuations: Dict[str, GradedValuation] = {}
        self.groups: Dict[str, AutGroup] = {}
        self._models: Dict[str, FiniteModel] = {}

    @classmethod
    def load(cls, paths: List[str], include_fixtures: bool = True) -> "Workspace":
        """Workspace of the shipped fixtures plus the given YAML documents."""
        loader = YamlConfigLoader()
        documents: List[Tuple[str, Dict[str, Any]]] = []
        if include_fixtures:
            from gradedval.v0.fixtures import FIXTURES_YAML

            documents.append(("<fixtures>", loader.loads(FIXTURES_YAML)))
        for path in paths:
            try:
                documents.append((path, loader.load(path)))
            except FileNotFoundError as e:
                raise ConfigError(str(e))
        return cls.from_documents(documents)

    @classmethod
    def from_documents(cls, documents: List[Tuple[str, Dict[str, Any]]]) -> "Workspace":
        """Validate, merge and resolve already loaded documents."""
        workspace = cls()
        for source, document in documents:
            workspace.add_document(source, document)
        workspace.resolve()
        return workspace

    def add_document(self, source: str, document: Dict[str, Any]) -> None:
        """Validate the sections of a document and register its names."""
        for section, entries in document.items():
            if section not in SPEC_TYPES:
                raise ConfigError(f"{source}: unknown section '{section}'.")
            if entries is None:
                continue
            if not isinstance(entries, dict):
                raise ConfigError(f"{source}: section '{section}' must map names to entries.")

            for name, entry in entries.items():
                name = str(name)
                if name in self.sources:
                    raise ConfigError(DuplicateNameMessage.format(name=name))
                try:
                    self.specs[section][name] = SPEC_TYPES[section].from_dict(entry or {})
                except ValidationError as e:
                    raise ConfigError(f"{source}: {section}.{name}: {e}")
                except TypeError:
                    raise ConfigError(f"{source}: {section}.{name} must be a mapping.")
                self.sources[name] = source

    def resolve(self) -> None:
        """Build every entity, section by section."""
        builders: Dict[str, Callable[[str, Any], Any]] = {
            "fields": self._build_field,
            "lattices": self._build_lattice,
            "graded_fields": self._build_graded_field,
            "extensions": self._build_extension,
            "valuations": self._build_valuation,
            "groups": self._build_group,
            "models": self._check_model,
        }
        for section in ConfigSections:
            for name, spec in self.specs[section].items():
                self._guarded(section, name, lambda: builders[section](name, spec))
        logger.debug(f"Resolved workspace: { {s: len(v) for s, v in self.specs.items()} }")

    def _guarded(self, section: str, name: str, build: Callable[[], Any]) -> Any:
        try:
            return build()
        except UsageError:
            raise
        except (MathematicalFailure, ValueError, ZeroDivisionError) as e:
            logger.error(f"Cannot build {section}.{name}: {e}")
            raise ConfigError(f"{self.sources.get(name, '?')}: {section}.{name}: {e}")

    def _ref(self, table: Dict[str, Any], kind: str, name: str, owner: str) -> Any:
        if name not in table:
            raise UnresolvedNameError(
                UnresolvedNameMessage.format(kind=kind, name=name, owner=owner)
            )
        return table[name]

    def _build_field(
        self, name: str, spec: FieldSpec, stack: Optional[List[str]] = None
    ) -> BaseField:
        if name in self.fields:
            return self.fields[name]

        stack = (stack or []) + [name]
        base = None
        if spec.base is not None:
            if spec.base in stack:
                raise ConfigError(f"Field '{name}' is defined in terms of itself.")
            base_spec = self._ref(self.specs["fields"], "field", spec.base, name)
            base = self._build_field(spec.base, base_spec, stack)

        if spec.kind == FieldKind.RATIONALS:
            field = Rationals()
        elif spec.kind == FieldKind.PRIME_FIELD:
            field = PrimeField(spec.p)
        elif spec.kind == FieldKind.SIMPLE_EXTENSION:
            field = SimpleExtension(base, parse_polynomial(spec.minpoly, base), spec.name)
        else:
            field = RationalFunctionField(base, spec.variable)

        self.fields[name] = field
        return field

    def _build_lattice(self, name: str, spec: LatticeSpec) -> Lattice:
        generators = [parse_exponent_vector(g) for g in spec.generators]
        try:
            lattice = Lattice(spec.dim, tuple(generators))
        except ValueError:
            lattice = Lattice.from_generators(spec.dim, generators)
        self.lattices[name] = lattice
        return lattice

    def _build_graded_field(self, name: str, spec: GradedFieldSpec) -> GradedField:
        base = self._ref(self.fields, "field", spec.base, name)
        lattice = self._ref(self.lattices, "lattice", spec.lattice, name)
        self.graded_fields[name] = GradedField(base, lattice, spec.variable)
        return self.graded_fields[name]

    def _build_extension(self, name: str, spec: ExtensionSpec) -> FieldExtension:
        big = self._ref(self.graded_fields, "graded field", spec.big, name)
        small = self._ref(self.graded_fields, "graded field", spec.small, name)
        twist = None
        if spec.twist is not None:
            twist = [parse_field_element(t, big.base) for t in spec.twist]
        self.extensions[name] = FieldExtension(big, small, twist)
        return self.extensions[name]

    def build_base_valuation(self, spec: BaseValuationSpec, field: BaseField) -> BaseValuation:
        """A valuation of field from its config entry."""
        rank = spec.rank
        if spec.kind == ValuationKind.TRIVIAL:
            return TrivialValuation(field, rank or 1)
        if spec.kind == ValuationKind.P_ADIC:
            return PAdicValuation(spec.p, rank or 1, field)
        if spec.kind == ValuationKind.PLACE:
            if not isinstance(field, RationalFunctionField):
                raise ConfigError(f"Places live on rational function fields, not {field}.")
            if spec.at.strip() == "inf":
                return PlaceValuation(field, None, rank or 1)
            at = parse_polynomial(spec.at, field.base, field.variable)
            return PlaceValuation(field, at, rank or 1)
        if spec.kind == ValuationKind.GAUSS:
            if not isinstance(field, RationalFunctionField):
                raise ConfigError(
                    f"Gauss valuations live on rational function fields, not {field}."
                )
            return GaussValuation(field, self.build_base_valuation(spec.inner, field.base), rank)
        if spec.kind == ValuationKind.COMPOSITE:
            outer = self.build_base_valuation(spec.outer, field)
            inner = self.build_base_valuation(spec.inner, outer.residue_field())
            return CompositeValuation(outer, inner, rank)

        if not isinstance(field, SimpleExtension):
            raise ConfigError(
                f"Prime ideal valuations live on Kummer extensions of Q, not {field}."
            )
        factor = parse_polynomial(spec.factor, PrimeField(spec.p), field.name)
        return PrimeIdealValuation(field, spec.p, factor, rank or 1)

    def _build_valuation(self, name: str, spec: ValuationSpec) -> GradedValuation:
        parent = self._ref(self.graded_fields, "graded field", spec.graded_field, name)
        v1 = self.build_base_valuation(spec.v1, parent.base)
        if spec.psi:
            images = tuple(parse_exponent_vector(row) for row in spec.psi)
            psi = LatticeHom(parent.gamma, v1.rank, images)
        else:
            psi = LatticeHom.zero(parent.gamma, v1.rank)
        self.valuations[name] = GradedValuation(parent, v1, psi)
        return self.valuations[name]

    def build_automorphism(
        self, spec: AutomorphismSpec, parent: GradedField
    ) -> GradedAutomorphism:
        """A graded automorphism of parent from its config entry."""
        sigma = parse_automorphism(parent.base, spec.sigma)
        chi = None if spec.chi is None else [parse_field_element(c, parent.base) for c in spec.chi]
        return GradedAutomorphism(parent, sigma, chi)

    def _build_group(self, name: str, spec: GroupSpec) -> AutGroup:
        parent = self._ref(self.graded_fields, "graded field", spec.graded_field, name)
        if spec.generators is not None:
            generators = [self.build_automorphism(g, parent) for g in spec.generators]
            group = AutGroup.generate(parent, generators)
        else:
            action = [self.build_automorphism(g, parent) for g in spec.action]
            group = AutGroup.from_table(parent, spec.table, action)
        self.groups[name] = group
        return group

    def _check_model(self, name: str, spec: ModelSpec) -> None:
        self._ref(self.groups, "group", spec.group, name)
        for point in spec.points:
            self._ref(self.valuations, "valuation", point, name)
        for scenario in spec.scenarios:
            for point in scenario.S + scenario.U:
                if point not in spec.points:
                    raise UnresolvedNameError(
                        UnresolvedNameMessage.format(
                            kind="point", name=point, owner=f"{name}.{scenario.name}"
                        )
                    )

    def graded_field(self, name: str) -> GradedField:
        """Graded field by name."""
        return self._ref(self.graded_fields, "graded field", name, "command line")

    def valuation(self, name: str) -> GradedValuation:
        """Valuation by name."""
        return self._ref(self.valuations, "valuation", name, "command line")

    def group(self, name: str) -> AutGroup:
        """Group by name."""
        return self._ref(self.groups, "group", name, "command line")

    def extension(self, name: str) -> FieldExtension:
        """Extension by name."""
        return self._ref(self.extensions, "extension", name, "command line")

    def model_spec(self, name: str) -> ModelSpec:
        """Model entry by name."""
        return self._ref(self.specs["models"], "model", name, "command line")

    def model(self, name: str) -> FiniteModel:
        """The finite model by name, built on first use."""
        if name not in self._models:
            spec = self.model_spec(name)
            points = [ValuePoint(self.valuations[p], p) for p in spec.points]
            self._models[name] = build_model(points, self.groups[spec.group])
        return self._models[name]

    def element(self, text: str, graded_field: str):
        """Parse an expression in a named graded field."""
        return parse_element(text, self.graded_field(graded_field))

    def export(self) -> Dict[str, Dict[str, Any]]:
        """Config document describing every entity, suitable for reloading."""
        return {
            section: {name: json.loads(spec.to_str()) for name, spec in entries.items()}
            for section, entries in self.specs.items()
            if entries
        }
