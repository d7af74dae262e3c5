# 测试包, 各模块的检查用例见 test_*.py
