"""Command-line interface: subcommands, formats, exit codes, cache flag."""

import json
import os
import subprocess
import sys

from qcflag.polynomial import parse_polynomial


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, '-m', 'qcflag', *args],
        capture_output=True,
        text=True,
        env=env,
        timeout=120,
    )


def test_schubert_text_and_json():
    text = run_cli('schubert', '--perm', '3 1 2', '--n', '3')
    assert text.returncode == 0
    assert text.stdout.strip() == 'x1^2'

    comma = run_cli('schubert', '--perm', '3,1,2', '--n', '3')
    assert comma.returncode == 0
    assert comma.stdout == text.stdout

    as_json = run_cli('schubert', '--perm', '3 1 2', '--n', '3', '--format', 'json')
    assert as_json.returncode == 0
    doc = json.loads(as_json.stdout)
    assert doc['command'] == 'schubert'
    assert doc['inputs'] == {'perm': [3, 1, 2], 'n': 3}
    assert doc['result']['text'] == 'x1^2'
    assert doc['meta']['package'] == 'qcflag'
    # printed text re-parses to the same polynomial as the JSON terms
    from qcflag.polynomial import Polynomial

    assert parse_polynomial(doc['result']['text'], 3) == \
        Polynomial.from_json_terms(doc['result']['polynomial'], 3)


def test_schubert_infers_rank_from_perm():
    out = run_cli('schubert', '--perm', '2 1')
    assert out.returncode == 0
    assert out.stdout.strip() == 'x1'


def test_relations_all_methods_cross_check():
    out = run_cli('relations', '--n', '3', '--method', 'all')
    assert out.returncode == 0
    lines = out.stdout.strip().splitlines()
    assert lines[0] == 'R[1] = x1 + x2 + x3'
    assert len(lines) == 3

    as_json = run_cli('relations', '--n', '2', '--method', 'recursion', '--format', 'json')
    doc = json.loads(as_json.stdout)
    assert doc['result']['text'] == ['R[1] = x1 + x2', 'R[2] = x1*x2 + q1']
    from qcflag.polynomial import Polynomial

    second = Polynomial.from_json_terms(doc['result']['relations'][1], 2)
    assert second == parse_polynomial('x1*x2 + q1', 2)


def test_qproduct_frozen_example():
    out = run_cli('qproduct', '--u', '2 1', '--v', '2 1', '--n', '2')
    assert out.returncode == 0
    assert out.stdout.strip() == '1 2: q1'

    as_json = run_cli('qproduct', '--u', '2 1', '--v', '2 1', '--n', '2',
                      '--format', 'json')
    doc = json.loads(as_json.stdout)
    assert doc['result']['terms'][0]['perm'] == [1, 2]
    assert doc['result']['terms'][0]['text'] == 'q1'


def test_gw_frozen_example():
    out = run_cli('gw', '--perms', '2 1;2 1;2 1', '--deg', '1', '--n', '2')
    assert out.returncode == 0
    assert out.stdout.strip() == '1'

    as_json = run_cli('gw', '--perms', '2 1;2 1;2 1', '--deg', '1', '--n', '2',
                      '--format', 'json')
    doc = json.loads(as_json.stdout)
    assert doc['result']['value'] == 1
    assert doc['inputs']['degrees'] == [1]


def test_verify_smoke_passes():
    out = run_cli('verify', '--n', '2', '--level', 'smoke')
    assert out.returncode == 0
    assert 'checks passed' in out.stdout


def test_usage_errors_exit_one():
    assert run_cli('schubert', '--perm', '2 1 1', '--n', '3').returncode == 1
    assert run_cli('schubert').returncode == 1
    assert run_cli('qproduct', '--u', '2 1', '--v', '2 1', '--n', 'x').returncode == 1
    assert run_cli('gw', '--perms', '2 1', '--deg', '1', '--n', '2').returncode == 1
    assert run_cli('nonsense').returncode == 1
    assert run_cli('verify', '--n', '2', '--level', 'bogus').returncode == 1


def test_cache_dir_environment_variable(tmp_path):
    out = run_cli(
        'qproduct', '--u', '2 1 3', '--v', '2 1 3', '--n', '3',
        env_extra={'QCFLAG_CACHE_DIR': str(tmp_path)},
    )
    assert out.returncode == 0
    assert '3 1 2: 1' in out.stdout
    assert (tmp_path / 'ring-n3.json').exists()
    # a second run loads the written cache cleanly
    again = run_cli(
        'gw', '--perms', '2 1 3;1 3 2;3 2 1', '--deg', '1 0', '--n', '3',
        env_extra={'QCFLAG_CACHE_DIR': str(tmp_path)},
    )
    assert again.returncode == 0
    assert again.stdout.strip() == '0'


def test_cache_dir_flag(tmp_path):
    out = run_cli('verify', '--n', '2', '--level', 'smoke',
                  '--cache-dir', str(tmp_path))
    assert out.returncode == 0
    assert (tmp_path / 'ring-n2.json').exists()
