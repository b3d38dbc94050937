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

"""bayesnet-fourier command line.

Usage: bayesnet-fourier [--config-file FILE] COMMAND [--seed N] [--out DIR]
                        [--format csv|json] [--jobs K] [--repeats R]

Exit status is 0 when every threshold check passes, 1 when one fails,
2 for configuration errors and 3 when a computation gives up (capacity
limits, contract violations).
"""

import os
import sys

from oslo_config import cfg
from oslo_log import log as logging

import bayesnet_fourier
from bayesnet_fourier._i18n import _
from bayesnet_fourier.common import config as bn_config
from bayesnet_fourier.common import exceptions
from bayesnet_fourier.harness import experiments
from bayesnet_fourier.harness import results

LOG = logging.getLogger(__name__)

PROJECT = 'bayesnet-fourier'

EXIT_OK = 0
EXIT_THRESHOLD_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_COMPUTATION_ERROR = 3

# sub-command flag -> [DEFAULT] option it overrides
OVERRIDES = (('seed', 'seed'), ('out', 'output_dir'),
             ('format', 'output_format'), ('jobs', 'jobs'),
             ('repeats', 'repeats'))


def add_command_parsers(subparsers):
    for name in experiments.names():
        doc = experiments.get(name).__doc__ or ''
        parser = subparsers.add_parser(name, help=doc.split('\n')[0])
        parser.add_argument('--seed', type=int,
                            help=_('Master seed for this run.'))
        parser.add_argument('--out',
                            help=_('Directory receiving the result files.'))
        parser.add_argument('--format', choices=results.FORMATS,
                            help=_('Result file format.'))
        parser.add_argument('--jobs', type=int,
                            help=_('Worker processes for independent '
                                   'seeds.'))
        parser.add_argument('--repeats', type=int,
                            help=_('Number of seeds spawned from --seed.'))


command_opt = cfg.SubCommandOpt('command',
                                title=_('Experiments'),
                                help=_('Available experiments'),
                                handler=add_command_parsers)


def _apply_overrides(conf):
    for flag, option in OVERRIDES:
        value = getattr(conf.command, flag)
        if value is None:
            continue
        if option in ('jobs', 'repeats') and value < 1:
            raise exceptions.ConfigError(
                field='DEFAULT.%s' % option,
                reason='--%s must be at least 1' % flag)
        conf.set_override(option, value)


def output_path(conf, name):
    return os.path.join(bn_config.output_dir(conf),
                        '%s.%s' % (name, conf.output_format))


def execute(conf):
    """Run the selected experiment and write its results; returns status."""
    name = conf.command.name
    try:
        _apply_overrides(conf)
        records = experiments.run(
            name, experiments.ExperimentConfig.from_conf(conf))
    except exceptions.ConfigError as e:
        LOG.error('Configuration error: %s', e)
        return EXIT_CONFIG_ERROR
    except exceptions.BayesNetFourierException as e:
        LOG.error('Experiment %(name)s stopped: %(error)s',
                  {'name': name, 'error': e})
        return EXIT_COMPUTATION_ERROR

    results.emit(records, conf.output_format, output_path(conf, name))
    results.ResultLog(os.path.join(bn_config.output_dir(conf),
                                   conf.result_log)).append(records)
    failed = [r for r in records if r.passed is False]
    if failed:
        LOG.warning('%(failed)d of %(total)d records of %(name)s failed '
                    'their threshold', {'failed': len(failed),
                                        'total': len(records), 'name': name})
        return EXIT_THRESHOLD_FAILED
    return EXIT_OK


def main(argv=None, conf=None):
    conf = cfg.CONF if conf is None else conf
    argv = sys.argv[1:] if argv is None else argv
    logging.register_options(conf)
    bn_config.register_opts(conf)
    conf.register_cli_opt(command_opt)
    conf(argv, project=PROJECT, version=bayesnet_fourier.__version__)
    logging.setup(conf, PROJECT)
    return execute(conf)


if __name__ == '__main__':
    sys.exit(main())
