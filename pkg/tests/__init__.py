"""aqil test suite. Set AQIL_TEST_SLOW=1 for the desk-scale training comparisons."""
from __future__ import absolute_import, print_function
