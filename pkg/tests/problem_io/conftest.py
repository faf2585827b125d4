"""
问题文件测试的共享样例
"""

import pytest

SAMPLE = """\
# 混合样例：每种群族各一题
[group Z2]
family = abelian
rank = 2

[morphism A]
group = Z2
matrix = 2 1; 1 1
automorphism = true

[morphism S]
group = Z2
matrix = 1 1; 0 1

[group Heis]
family = semidirect
base = Z2
morphism = S

[group F2]
family = free
generators = a, b

[morphism swap]
group = F2
images = b, a
inverse = b, a
witness = 2 : 1

[target hit]
group = Z2
kind = finite
elements = (5,3)

[target parity]
group = Heis
kind = coset
representative = e1^2
generators = e1^2, e2^2

[problem orbit]
kind = GBrP
group = Z2
morphism = A
subject = (1,0)
target = hit

[problem blocked]
kind = GCP
group = Heis
subject = e1
target = parity
method = separability

[problem rotate]
kind = CP
group = F2
g = a b
h = b a

[problem twisted]
kind = TCP
group = F2
subject = a
other = b
morphism = swap

[problem starved]
kind = GBrP
group = Z2
morphism = A
subject = (1,0)
target = hit
max_exponent = 1
"""


@pytest.fixture
def sample_text():
    return SAMPLE


@pytest.fixture
def sample_path(tmp_path):
    path = tmp_path / "problems.txt"
    path.write_text(SAMPLE, encoding="utf-8")
    return path
