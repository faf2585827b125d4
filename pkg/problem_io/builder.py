"""
问题文件 → 群内核对象

按名字解析引用（群 ↔ 态射可以互相引用，例如半直积依赖基群上的自同构），
构造群、态射、目标与问题实例。任何失败都抛出带段名与键名的 DefinitionError，
由解析器映射为行列位置。
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from group_kernel.builders import (
    abelian_group,
    cyclic_group,
    finite_group,
    free_group,
    free_times_finite,
    make_morphism,
    matrix_morphism,
    semidirect_product,
    symmetric_group,
    virtually_free_group,
)
from group_kernel.errors import CapabilityError, GroupInputError
from group_kernel.kernel import generators, inner_morphism
from group_kernel.notation import parse_element
from group_kernel.structures import Element, GroupFamily, GroupHandle, Morphism
from problem_io.models import BudgetOverrides, GroupSpec, MorphismSpec, ProblemFile, ProblemSpec, TargetSpec
from reduction.instances import ProblemInstance, ProblemKind
from solvers.dispatcher import SolveMethod
from subset_targets.targets import Coset, FiniteSet, Subgroup, Target

logger = logging.getLogger(__name__)


class DefinitionError(GroupInputError):
    """某一段的定义不合法（未声明的引用、记号错误、不变量检查失败）"""

    def __init__(self, message: str, section: str, name: str, key: Optional[str] = None):
        super().__init__(f"{section} {name}: {message}")
        self.section = section
        self.name = name
        self.key = key


@dataclass(frozen=True)
class BuiltProblem:
    """可直接求解的问题"""

    name: str
    instance: ProblemInstance
    method: SolveMethod
    overrides: BudgetOverrides


@dataclass(frozen=True)
class BuiltFile:
    groups: Dict[str, GroupHandle]
    morphisms: Dict[str, Morphism]
    targets: Dict[str, Target]
    problems: Tuple[BuiltProblem, ...]


class _Resolver:
    """带记忆与环检测的名字解析"""

    def __init__(self, problem_file: ProblemFile):
        self.group_specs = {g.name: g for g in problem_file.groups}
        self.morphism_specs = {m.name: m for m in problem_file.morphisms}
        self.target_specs = {t.name: t for t in problem_file.targets}
        self.groups: Dict[str, GroupHandle] = {}
        self.morphisms: Dict[str, Morphism] = {}
        self.targets: Dict[str, Target] = {}
        self._active: Set[Tuple[str, str]] = set()

    # ---------- 引用 ----------

    def group(self, name: str, section: str, owner: str, key: str) -> GroupHandle:
        if name not in self.group_specs:
            raise DefinitionError(f"未声明的群 {name}", section, owner, key)
        if name not in self.groups:
            self._enter("group", name, section, owner, key)
            try:
                self.groups[name] = self._build_group(self.group_specs[name])
            finally:
                self._active.discard(("group", name))
        return self.groups[name]

    def morphism(self, name: str, section: str, owner: str, key: str) -> Morphism:
        if name not in self.morphism_specs:
            raise DefinitionError(f"未声明的态射 {name}", section, owner, key)
        if name not in self.morphisms:
            self._enter("morphism", name, section, owner, key)
            try:
                self.morphisms[name] = self._build_morphism(self.morphism_specs[name])
            finally:
                self._active.discard(("morphism", name))
        return self.morphisms[name]

    def target(self, name: str, section: str, owner: str, key: str) -> Target:
        if name not in self.target_specs:
            raise DefinitionError(f"未声明的目标 {name}", section, owner, key)
        if name not in self.targets:
            self.targets[name] = self._build_target(self.target_specs[name])
        return self.targets[name]

    def _enter(self, kind: str, name: str, section: str, owner: str, key: str) -> None:
        if (kind, name) in self._active:
            raise DefinitionError(f"循环引用 {kind} {name}", section, owner, key)
        self._active.add((kind, name))

    # ---------- 元素 ----------

    @staticmethod
    def element(G: GroupHandle, text: str, section: str, owner: str, key: str) -> Element:
        try:
            return parse_element(G, text)
        except GroupInputError as e:
            raise DefinitionError(f"{key} = {text}: {e}", section, owner, key) from e

    def elements(self, G: GroupHandle, texts, section: str, owner: str, key: str) -> List[Element]:
        return [self.element(G, text, section, owner, key) for text in texts]

    # ---------- 构造 ----------

    def _build_group(self, spec: GroupSpec) -> GroupHandle:
        try:
            return self._group_by_family(spec)
        except DefinitionError:
            raise
        except (GroupInputError, CapabilityError) as e:
            raise DefinitionError(str(e), "group", spec.name) from e

    def _group_by_family(self, spec: GroupSpec) -> GroupHandle:
        family = spec.family
        name = spec.name
        if family == "free":
            return free_group(spec.generators, name=name)
        if family == "abelian":
            return abelian_group(spec.rank or 0, spec.generators or None, name=name)
        if family == "finite":
            indices = None
            if spec.generators and not spec.elements:
                raise DefinitionError("指定 generators 时需要 elements 给出元素名", "group", name, "generators")
            if spec.generators:
                missing = [g for g in spec.generators if g not in spec.elements]
                if missing:
                    raise DefinitionError(f"生成元 {missing} 不在元素名中", "group", name, "generators")
                indices = [spec.elements.index(g) for g in spec.generators]
            return finite_group(
                spec.table,
                indices,
                spec.generators if indices is not None else None,
                name=name,
                element_names=spec.elements or None,
            )
        if family == "cyclic":
            generator = spec.generators[0] if spec.generators else "a"
            return cyclic_group(spec.order, generator=generator, name=name)
        if family == "symmetric":
            return symmetric_group(spec.degree, name=name)
        if family == "semidirect":
            base = self.group(spec.base, "group", name, "base")
            phi = self.morphism(spec.morphism, "group", name, "morphism")
            if phi.domain is not base:
                raise DefinitionError(f"态射 {spec.morphism} 不是 {spec.base} 的自同构", "group", name, "morphism")
            return semidirect_product(base, phi, t_name=spec.t or "t", name=name)
        if family == "free-times-finite":
            base = self.group(spec.base, "group", name, "base")
            finite = self.group(spec.finite, "group", name, "finite")
            return free_times_finite(base, finite, name=name)
        return self._virtually_free(spec)

    def _virtually_free(self, spec: GroupSpec) -> GroupHandle:
        name = spec.name
        F = self.group(spec.base, "group", name, "base")
        if F.family != GroupFamily.FREE:
            raise DefinitionError("虚自由群的 base 必须是自由群", "group", name, "base")
        cosets = list(spec.cosets)
        action = {}
        for letter, images in spec.action.items():
            key = f"action.{letter}"
            if letter not in cosets[1:]:
                raise DefinitionError(f"未声明的陪集字母 {letter}", "group", name, key)
            action[cosets.index(letter)] = self.elements(F, images, "group", name, key)
        products = {}
        for pair, value in spec.products.items():
            key = f"product.{pair}"
            letters = pair.split(".")
            if len(letters) != 2 or any(x not in cosets[1:] for x in letters):
                raise DefinitionError(f"乘积键应为 product.b_i.b_j: {pair}", "group", name, key)
            if "|" not in value:
                raise DefinitionError(f"乘积值应为 'WORD | COSET': {value}", "group", name, key)
            word, coset = (part.strip() for part in value.split("|", 1))
            if coset not in cosets:
                raise DefinitionError(f"未声明的陪集字母 {coset}", "group", name, key)
            products[(cosets.index(letters[0]), cosets.index(letters[1]))] = (
                self.element(F, word, "group", name, key),
                cosets.index(coset),
            )
        return virtually_free_group(F, cosets, action, products, name=name)

    def _build_morphism(self, spec: MorphismSpec) -> Morphism:
        name = spec.name
        G = self.group(spec.group, "morphism", name, "group")
        try:
            phi = self._morphism_from_spec(G, spec)
        except DefinitionError:
            raise
        except (GroupInputError, CapabilityError) as e:
            raise DefinitionError(str(e), "morphism", name) from e
        if spec.automorphism and not phi.invertible:
            key = "matrix" if spec.matrix else "images"
            raise DefinitionError("声明为自同构但不可逆", "morphism", name, key)
        return phi

    def _morphism_from_spec(self, G: GroupHandle, spec: MorphismSpec) -> Morphism:
        name = spec.name
        if spec.inner is not None:
            return inner_morphism(G, self.element(G, spec.inner, "morphism", name, "inner"))
        witness = None
        if spec.witness is not None:
            power_text, _, word = spec.witness.partition(":")
            try:
                r = int(power_text)
            except ValueError as e:
                raise DefinitionError(f"见证应为 'R : WORD': {spec.witness}", "morphism", name, "witness") from e
            witness = (r, self.element(G, word, "morphism", name, "witness"))
        if spec.matrix:
            phi = matrix_morphism(G, spec.matrix, spec.inverse_matrix or None, name=name)
            if witness is not None:
                phi = make_morphism(G, G, phi.images, phi.inverse_images, witness=witness, name=name)
            return phi
        images = self.elements(G, spec.images, "morphism", name, "images")
        inverse = self.elements(G, spec.inverse, "morphism", name, "inverse") if spec.inverse else None
        if inverse is None and G.family == GroupFamily.FINITE:
            inverse = _finite_inverse_images(G, images)
        return make_morphism(G, G, images, inverse, witness=witness, name=name)

    def _build_target(self, spec: TargetSpec) -> Target:
        name = spec.name
        G = self.group(spec.group, "target", name, "group")
        try:
            if spec.kind == "finite":
                return FiniteSet.of(G, self.elements(G, spec.elements, "target", name, "elements"))
            subgroup = Subgroup(G, tuple(self.elements(G, spec.generators, "target", name, "generators")))
            if spec.kind == "subgroup":
                return subgroup
            return Coset(self.element(G, spec.representative, "target", name, "representative"), subgroup)
        except DefinitionError:
            raise
        except (GroupInputError, CapabilityError) as e:
            raise DefinitionError(str(e), "target", name) from e

    def problem(self, spec: ProblemSpec) -> BuiltProblem:
        name = spec.name
        G = self.group(spec.group, "problem", name, "group")
        kind = ProblemKind(spec.kind)
        subject = self.element(G, spec.subject, "problem", name, "subject")
        other = self.element(G, spec.other, "problem", name, "other") if spec.other is not None else None
        morphism = self.morphism(spec.morphism, "problem", name, "morphism") if spec.morphism else None
        target = self.target(spec.target, "problem", name, "target") if spec.target else None
        if target is not None and target.group is not G:
            raise DefinitionError(f"目标 {spec.target} 不在群 {spec.group} 中", "problem", name, "target")
        if morphism is not None and morphism.domain is not G:
            raise DefinitionError(f"态射 {spec.morphism} 不是 {spec.group} 的自同态", "problem", name, "morphism")
        try:
            instance = ProblemInstance(
                kind=kind, group=G, subject=subject, other=other, morphism=morphism, target=target, name=name
            )
        except GroupInputError as e:
            raise DefinitionError(str(e), "problem", name, "kind") from e
        return BuiltProblem(name=name, instance=instance, method=SolveMethod(spec.method), overrides=spec.budget)


def _finite_inverse_images(G: GroupHandle, images: List[Element]) -> Optional[List[Element]]:
    """有限群上若生成元像给出双射，则求出逆像（否则视为自同态）"""
    try:
        phi = make_morphism(G, G, images)
    except GroupInputError:
        return None
    mapping = phi.element_map
    if mapping is None or len(set(mapping)) != len(mapping):
        return None
    preimage = {target: source for source, target in enumerate(mapping)}
    return [Element(G, preimage[a.payload]) for a in generators(G)]


def build(problem_file: ProblemFile) -> BuiltFile:
    """
    构造问题文件中的全部对象

    Raises:
        DefinitionError: 任一段不合法
    """
    resolver = _Resolver(problem_file)
    for spec in problem_file.groups:
        resolver.group(spec.name, "group", spec.name, "family")
    for spec in problem_file.morphisms:
        resolver.morphism(spec.name, "morphism", spec.name, "group")
    for spec in problem_file.targets:
        resolver.target(spec.name, "target", spec.name, "group")
    problems = tuple(resolver.problem(spec) for spec in problem_file.problems)
    logger.debug("构造完成: %d 个问题", len(problems))
    return BuiltFile(
        groups=dict(resolver.groups),
        morphisms=dict(resolver.morphisms),
        targets=dict(resolver.targets),
        problems=problems,
    )
