"""Pytest collection wiring for testscenarios-based test classes.

The test modules rely on the unittest ``load_tests`` protocol
(``testscenarios.load_tests_apply_scenarios``) to expand ``scenarios``,
which pytest does not honour.  Expand each scenario into its own
TestCase subclass at collection time so the same tests run under pytest.
"""

import unittest

from _pytest import unittest as pytest_unittest


def pytest_pycollect_makeitem(collector, name, obj):
    if not (isinstance(obj, type) and issubclass(obj, unittest.TestCase)):
        return None
    scenarios = obj.__dict__.get('scenarios') or getattr(obj, 'scenarios',
                                                         None)
    if not scenarios:
        return None
    items = []
    for scenario_name, params in scenarios:
        attrs = dict(params)
        attrs['scenarios'] = None
        sub = type('%s[%s]' % (name, scenario_name), (obj,), attrs)
        sub.__module__ = obj.__module__
        item = pytest_unittest.UnitTestCase.from_parent(
            collector, name='%s[%s]' % (name, scenario_name))
        item._obj = sub
        items.append(item)
    return items
