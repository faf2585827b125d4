"""
项目单元测试
分层结构：
- tests/group_kernel/ - 群内核测试
- tests/subset_targets/ - 目标集合与切片测试
- tests/reduction/ - 归约层测试
- tests/solvers/ - 各群族求解器与分派测试
- tests/separability/ - 可分性引擎测试
- tests/problem_io/ - 问题文件与 CLI 测试
- tests/acceptance/ - 随机化验收测试（固定种子）
"""
