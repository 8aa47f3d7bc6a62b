# conftest.py
from hypothesis import settings

# property tests replay the same examples on every run
settings.register_profile("qslink", derandomize=True, deadline=None)
settings.load_profile("qslink")
