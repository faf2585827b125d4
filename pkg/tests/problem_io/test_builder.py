"""
问题文件构造测试
"""

import pytest

from group_kernel.errors import GroupInputError
from group_kernel.kernel import verify_witness
from group_kernel.structures import GroupFamily
from problem_io.builder import DefinitionError, build
from problem_io.models import GroupSpec, MorphismSpec, ProblemFile, ProblemSpec, TargetSpec
from problem_io.parser import parse_text
from reduction.instances import ProblemKind
from solvers.dispatcher import SolveMethod
from subset_targets.targets import Coset


class TestBuild:
    def test_sample_objects(self, sample_text):
        built = build(parse_text(sample_text))
        assert built.groups["Heis"].family == GroupFamily.SEMIDIRECT
        assert built.groups["Heis"].base is built.groups["Z2"]
        assert verify_witness(built.morphisms["swap"])
        assert isinstance(built.targets["parity"], Coset)

    def test_problem_instances(self, sample_text):
        problems = {p.name: p for p in build(parse_text(sample_text)).problems}
        assert problems["rotate"].instance.kind == ProblemKind.CP
        assert problems["blocked"].method == SolveMethod.SEPARABILITY
        assert problems["starved"].overrides.max_exponent == 1

    def test_finite_inverse_images_derived(self):
        """有限群上的双射自动得到逆像"""
        problem_file = ProblemFile(
            groups=(GroupSpec(name="Z5", family="cyclic", order=5),),
            morphisms=(MorphismSpec(name="double", group="Z5", images=("a^2",)),),
        )
        assert build(problem_file).morphisms["double"].invertible

    def test_virtually_free_group(self):
        problem_file = ProblemFile(
            groups=(
                GroupSpec(name="F", family="free", generators=("a", "b")),
                GroupSpec(
                    name="V",
                    family="virtually-free",
                    base="F",
                    cosets=("1", "z"),
                    action={"z": ("b", "a")},
                    products={"z.z": "1 | 1"},
                ),
            ),
        )
        V = build(problem_file).groups["V"]
        assert V.coset_names == ("1", "z")


class TestDefinitionErrors:
    def test_cyclic_reference(self):
        """半直积引用自身上的态射"""
        problem_file = ProblemFile(
            groups=(GroupSpec(name="G", family="semidirect", base="G", morphism="phi"),),
            morphisms=(MorphismSpec(name="phi", group="G", images=("t",)),),
        )
        with pytest.raises(DefinitionError, match="循环引用"):
            build(problem_file)

    def test_target_in_other_group(self):
        problem_file = ProblemFile(
            groups=(
                GroupSpec(name="A", family="abelian", rank=1),
                GroupSpec(name="B", family="abelian", rank=1),
            ),
            targets=(TargetSpec(name="k", group="B", kind="subgroup", generators=("(2)",)),),
            problems=(ProblemSpec(name="p", kind="GCP", group="A", subject="(1)", target="k"),),
        )
        with pytest.raises(DefinitionError) as exc_info:
            build(problem_file)
        assert (exc_info.value.section, exc_info.value.key) == ("problem", "target")

    def test_kind_needs_morphism(self):
        problem_file = ProblemFile(
            groups=(GroupSpec(name="A", family="abelian", rank=1),),
            problems=(ProblemSpec(name="p", kind="TCP", group="A", subject="(1)", other="(1)"),),
        )
        with pytest.raises(DefinitionError, match="需要态射"):
            build(problem_file)

    def test_bad_product_key(self):
        problem_file = ProblemFile(
            groups=(
                GroupSpec(name="F", family="free", generators=("a",)),
                GroupSpec(name="V", family="virtually-free", base="F", cosets=("1", "z"), products={"z": "1 | 1"}),
            ),
        )
        with pytest.raises(DefinitionError) as exc_info:
            build(problem_file)
        assert exc_info.value.key == "product.z"

    def test_is_group_input_error(self):
        assert issubclass(DefinitionError, GroupInputError)
