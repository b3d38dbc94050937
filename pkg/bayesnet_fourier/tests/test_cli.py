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

import os

import fixtures
from oslo_config import cfg

from bayesnet_fourier.harness import cli
from bayesnet_fourier.harness import results
from bayesnet_fourier.tests import base


class TestMain(base.TestCase):

    def setUp(self):
        super(TestMain, self).setUp()
        self.tempdir = self.useFixture(fixtures.TempDir()).path
        self.useFixture(fixtures.EnvironmentVariable('BNFOURIER_OUTPUT_DIR'))

    def _main(self, *argv):
        return cli.main(list(argv), conf=cfg.ConfigOpts())

    def _config_file(self, text):
        path = os.path.join(self.tempdir, 'bayesnet-fourier.conf')
        with open(path, 'w') as f:
            f.write(text)
        return path

    def test_lower_bounds(self):
        self.assertEqual(cli.EXIT_OK,
                         self._main('lower-bounds', '--out', self.tempdir))
        with open(os.path.join(self.tempdir, 'lower-bounds.csv')) as f:
            lines = f.read().splitlines()
        self.assertEqual(4, len(lines))
        self.assertTrue(lines[0].startswith(
            'experiment,seed,inputs_digest,constants_version,passed,'))
        log = results.ResultLog(os.path.join(self.tempdir, 'results.jsonl'))
        self.assertEqual(3, len(log.read()))

    def test_json_output_and_log_growth(self):
        for _ in range(2):
            self.assertEqual(cli.EXIT_OK,
                             self._main('lower-bounds', '--out',
                                        self.tempdir, '--format', 'json'))
        records = results.load_json(
            os.path.join(self.tempdir, 'lower-bounds.json'))
        self.assertEqual(3, len(records))
        log = results.ResultLog(os.path.join(self.tempdir, 'results.jsonl'))
        self.assertEqual(6, len(log.read()))

    def test_output_dir_from_environment(self):
        self.useFixture(fixtures.EnvironmentVariable('BNFOURIER_OUTPUT_DIR',
                                                     self.tempdir))
        self.assertEqual(cli.EXIT_OK, self._main('lower-bounds'))
        self.assertTrue(os.path.exists(
            os.path.join(self.tempdir, 'lower-bounds.csv')))

    def test_missing_seed(self):
        self.assertEqual(cli.EXIT_CONFIG_ERROR,
                         self._main('learn-tree', '--out', self.tempdir))
        self.assertFalse(os.path.exists(
            os.path.join(self.tempdir, 'learn-tree.csv')))

    def test_bad_jobs(self):
        self.assertEqual(cli.EXIT_CONFIG_ERROR,
                         self._main('lower-bounds', '--out', self.tempdir,
                                    '--jobs', '0'))

    def test_config_file(self):
        path = self._config_file('[network]\n'
                                 'source = chain\n'
                                 'n = 3\n'
                                 '[target]\n'
                                 'literals = +1,-2\n')
        self.assertEqual(cli.EXIT_OK,
                         self._main('--config-file', path, 'spectrum',
                                    '--out', self.tempdir,
                                    '--format', 'json'))
        [record] = results.load_json(
            os.path.join(self.tempdir, 'spectrum.json'))
        self.assertEqual(3, record.metrics['n'])
        self.assertEqual(2, record.metrics['d'])
        self.assertTrue(record.passed)

    def test_computation_error(self):
        path = self._config_file('[enumeration]\n'
                                 'spectrum_limit = 3\n'
                                 '[network]\n'
                                 'source = chain\n'
                                 'n = 4\n')
        self.assertEqual(cli.EXIT_COMPUTATION_ERROR,
                         self._main('--config-file', path, 'spectrum',
                                    '--out', self.tempdir))
