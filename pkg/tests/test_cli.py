# tests/test_cli.py
import csv
import io
import json

import pytest

from polyfib.cli import CSV_COLUMNS, build_parser, main

WRONG_RECORD = """\
- id: wrong_generating_function
  statement: "sum F_j / 10^j = sum F_j / 11^j"
  lhs: {series: {family: F, r: 1, k: 0, z: "1/10"}, method: direct}
  rhs: {series: {family: F, r: 1, k: 0, z: "1/11"}, method: rational_gf}
"""


def run(capsys, *argv):
    """Run the CLI and return (exit code, stdout, stderr)."""
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSequenceCommands:
    """fib, lucas, bernoulli and bpoly."""

    def test_fib(self, capsys):
        assert run(capsys, 'fib', '10') == (0, '55\n', '')

    def test_lucas_negative(self, capsys):
        """Negative indices parse as numbers."""
        assert run(capsys, 'lucas', '-3') == (0, '-4\n', '')

    def test_bernoulli(self, capsys):
        """Exact rational output."""
        assert run(capsys, 'bernoulli', '12') == (0, '-691/2730\n', '')

    def test_bernoulli_negative(self, capsys):
        """Invalid indices exit with 2 and a message."""
        code, out, err = run(capsys, 'bernoulli', '-1')
        assert code == 2
        assert err.startswith('polyfib bernoulli:')

    def test_bpoly(self, capsys):
        """B_2(1/3) = -1/18."""
        code, out, _ = run(capsys, 'bpoly', '2', '1/3', '--prec', '128')
        assert code == 0
        assert out.startswith('-0.0555555555555555555555')

    def test_bpoly_complex(self, capsys):
        """B_1(1/2 + 3i) = 3i."""
        code, out, _ = run(capsys, 'bpoly', '1', '1/2', '3', '--prec', '64')
        assert code == 0
        assert '3.0j' in out


class TestLi:
    """The li command."""

    def test_json(self, capsys):
        """Li_2(1) = pi^2/6 via the zeta path."""
        code, out, _ = run(capsys, 'li', '--k', '2', '--z', '1', '--prec', '128', '--format', 'json')
        assert code == 0
        data = json.loads(out)
        assert data['k'] == 2
        assert data['path'] == 'zeta'
        assert data['value_re'].startswith('1.644934066848226436472')
        assert data['value_im'] == '0.0'

    def test_text(self, capsys):
        """Li_2(1/2) = pi^2/12 - log^2(2)/2."""
        code, out, _ = run(capsys, 'li', '--k', '2', '--z', '1/2', '--prec', '128')
        assert code == 0
        assert out.startswith('0.5822405264650125059')
        value, path, bound = out.splitlines()
        assert path == 'path: direct_series'
        assert bound.startswith('tail bound: ')
        assert 0 <= float(bound.split(': ')[1]) < 2.0 ** -100

    @pytest.mark.parametrize('k,z,path', [
        ('-1', '1/3', 'rational'),
        ('2', '-1.618', 'inversion'),
        ('3', '0.9', 'log_expansion'),
    ])
    def test_text_names_path(self, capsys, k, z, path):
        """Text output gives the value, then the path and the tail bound."""
        code, out, _ = run(capsys, 'li', '--k', k, '--z', z, '--prec', '64')
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 3
        assert lines[1] == f'path: {path}'
        assert lines[2].startswith('tail bound: ')

    def test_pole(self, capsys):
        """Li_1 has a pole at 1."""
        code, _, err = run(capsys, 'li', '--k', '1', '--z', '1')
        assert code == 2
        assert 'pole' in err

    def test_default_prec_from_env(self, capsys, monkeypatch):
        """POLYFIB_PREC sets the precision when --prec is absent."""
        monkeypatch.setenv('POLYFIB_PREC', '64')
        code, out, _ = run(capsys, 'li', '--k', '2', '--z', '1', '--format', 'json')
        assert code == 0
        assert len(json.loads(out)['value_re'].replace('.', '')) <= 17


class TestSeries:
    """The series command."""

    def test_json(self, capsys):
        """sum F_j / 10^j = 10/89 by the generating function."""
        code, out, _ = run(capsys, 'series', '--family', 'F', '--r', '1', '--k', '0', '--z', '1/10',
                           '--method', 'gf', '--prec', '128', '--format', 'json')
        assert code == 0
        data = json.loads(out)
        assert data['method'] == 'rational_gf'
        assert data['value_re'].startswith('0.11235955056179775')

    def test_regularized(self, capsys):
        """The alternating L_2j series at k = 2 by its Bernoulli form."""
        code, out, _ = run(capsys, 'series', '--family', 'L', '--r', '2', '--k', '2', '--weight', 'alternating',
                           '--method', 'bernoulli', '--prec', '128', '--format', 'json')
        assert code == 0
        data = json.loads(out)
        assert data['regularized'] is True
        # pi^2/6 + 2 log^2 alpha
        assert data['value_re'].startswith('2.1080637')

    def test_table(self, capsys):
        code, out, _ = run(capsys, 'series', '--family', 'L', '--r', '1', '--k', '2', '--z', '1/2',
                           '--prec', '64', '--format', 'table')
        assert code == 0
        assert out.splitlines()[0].startswith('family')
        assert 'direct' in out

    def test_divergent(self, capsys):
        """Summing outside the region fails with exit code 2."""
        code, _, err = run(capsys, 'series', '--family', 'F', '--r', '1', '--k', '2', '--z', '1',
                           '--method', 'direct')
        assert code == 2
        assert 'diverges' in err

    def test_invalid_spec(self, capsys):
        """Inconsistent fields are reported, not raised."""
        code, _, err = run(capsys, 'series', '--family', 'F', '--r', '1', '--weight', 'quarter', '--z', '1/2')
        assert code == 2
        assert 'takes no z' in err


class TestVerify:
    """The verify command."""

    def test_csv(self, capsys, clean_logging):
        """CSV report with the fixed columns; exit 0 when everything passes."""
        code, out, err = run(capsys, 'verify', '--id', 'li2_beta', '--id', 'fib_log_form_third',
                             '--prec', '128', '--format', 'csv')
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert list(rows[0]) == CSV_COLUMNS
        assert [r['id'] for r in rows] == ['fib_log_form_third', 'li2_beta']
        assert {r['status'] for r in rows} == {'pass'}
        assert '2 identities at 128 bits: 2 passed' in err

    def test_json_output_file(self, capsys, clean_logging, tmp_path):
        """--output writes the report to a file."""
        path = tmp_path / 'verify.json'
        code, out, _ = run(capsys, 'verify', '--id', 'ff_odd_s_greater_than_r', '--prec', '128',
                           '--format', 'json', '--output', str(path))
        assert code == 0
        assert out == ''
        data = json.loads(path.read_text(encoding='utf-8'))
        assert data[0]['status'] == 'skipped'
        assert data[0]['reason'] == 'r odd, s>r undefined'

    def test_unknown_id(self, capsys, clean_logging):
        """Unknown ids exit with 2."""
        code, _, err = run(capsys, 'verify', '--id', 'nope', '--prec', '128')
        assert code == 2
        assert 'nope' in err

    def test_failure_exit_code(self, capsys, clean_logging, tmp_path):
        """A failing identity exits with 1 and points at the error log."""
        (tmp_path / 'extra.yml').write_text(WRONG_RECORD, encoding='utf-8')
        config = tmp_path / 'polyfib.yml'
        config.write_text("identities:\n  - extra.yml\n", encoding='utf-8')
        code, out, err = run(capsys, '--config', str(config), 'verify', '--id', 'wrong_generating_function',
                             '--prec', '128', '--log-dir', str(tmp_path / 'logs'))
        assert code == 1
        assert 'wrong_generating_function' in out
        assert 'fail' in out
        assert 'Errors logged to' in err
        assert 'Failed: wrong_generating_function' in err

    def test_id_or_all_required(self, capsys):
        """verify needs --id or --all."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(['verify'])


class TestListAndCheckup:
    """list and checkup."""

    def test_list(self, capsys):
        code, out, _ = run(capsys, 'list', '--width', '40')
        assert code == 0
        lines = out.splitlines()
        assert lines[0].split() == ['id', 'lhs', 'rhs', 'statement']
        assert any(line.startswith('lucas_half_power_dilog ') for line in lines)

    def test_checkup(self, capsys, tmp_path, monkeypatch):
        """A clean environment passes the checkup."""
        monkeypatch.chdir(tmp_path)
        monkeypatch.setenv('HOME', str(tmp_path))
        code, out, _ = run(capsys, 'checkup')
        assert code == 0
        assert 'mpmath' in out
        assert 'Independence audit passed' in out
