# Collection wiring for pytest: the tests import `config` and `utils`
# directly, as tests.test_all arranges for unittest discovery.
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
