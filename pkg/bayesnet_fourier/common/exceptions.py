# Licensed under the Apache License, Version 2.0 (the "License"); you may
# not use this file except in compliance with the License. You may obtain
# a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
# WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
# License for the specific language governing permissions and limitations
# under the License.

"""bayesnet_fourier base exception handling.

Subclasses declare a ``message`` template; keyword arguments given to the
constructor fill it and stay available as attributes.
"""

from bayesnet_fourier._i18n import _


class BayesNetFourierException(Exception):
    """Base bayesnet_fourier Exception.

    To correctly use this class, inherit from it and define
    a 'message' property. That message will get printf'd
    with the keyword arguments provided to the constructor.
    """
    message = _("An unknown exception occurred.")

    def __init__(self, **kwargs):
        self.kwargs = kwargs
        for key, value in kwargs.items():
            setattr(self, key, value)
        try:
            self.msg = self.message % kwargs
        except (KeyError, TypeError):
            # at least get the core message out if something happened
            self.msg = self.message
        super(BayesNetFourierException, self).__init__(self.msg)

    def __str__(self):
        return self.msg


class InvalidInput(BayesNetFourierException):
    message = _("Invalid input for operation: %(error_message)s.")


class InvalidProbability(InvalidInput):
    message = _("Probability %(value)r of node %(node)s, row %(row)s is not "
                "strictly inside (0, 1).")


class InvalidStructure(InvalidInput):
    message = _("Invalid network structure: %(reason)s.")


class ShapeMismatch(InvalidInput):
    message = _("Expected %(expected)s, got %(actual)s.")


class ContractViolation(BayesNetFourierException):
    message = _("Operation %(operation)s requires %(requirement)s.")


class CapacityExceeded(BayesNetFourierException):
    message = _("%(what)s of %(value)s exceeds the configured limit "
                "%(limit)s.")


class EnumerationLimitExceeded(CapacityExceeded):
    message = _("Enumerating 2^%(n)s assignments exceeds the configured "
                "limit of 2^%(limit)s.")


class SampleBudgetExceeded(CapacityExceeded):
    message = _("Sample budget m1=%(m1)s, m2=%(m2)s exceeds the configured "
                "maximum %(limit)s.")


class PtfIterationCapReached(BayesNetFourierException):
    message = _("PTF construction made %(updates)s coefficient updates "
                "without converging (cap %(cap)s).")


class ConfigError(BayesNetFourierException):
    message = _("Invalid configuration value for %(field)s: %(reason)s.")


class UnknownExperiment(ConfigError):
    message = _("Unknown experiment %(name)s.")
