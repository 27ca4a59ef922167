"""Tests for the command line entry point"""

import json

import pytest

import src.cli as cli
from src.cli import EXIT_DISAGREEMENT, EXIT_ERROR, EXIT_OK, main
from src.search import runner


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestSolve:
    def test_example3(self, capsys):
        code, out = run(capsys, 'solve', '--instance', 'example3')
        assert code == EXIT_OK
        document = json.loads(out)
        assert document['psi'] == pytest.approx(0.7)
        assert document['path'] == [0, 1, 2]
        assert document['cost'] == [0.0, 100.0, 100.0]
        assert document['bound'] in ('maxent', 'shapley')

    def test_without_label_retention(self, capsys):
        code, out = run(capsys, 'solve', '--instance', 'example3', '--no-label-retention')
        assert code == EXIT_OK
        assert json.loads(out)['psi'] == pytest.approx(0.8)

    def test_rank_trace(self, capsys):
        code, out = run(capsys, 'solve', '--instance', 'example1', '--algorithm', 'rank', '--trace',
                        '--bound', 'shapley')
        assert code == EXIT_OK
        document = json.loads(out)
        assert document['algorithm'] == 'rank'
        assert document['psi'] == pytest.approx(1 / 3)
        assert len(document['emitted']) == document['stats']['paths_enumerated']

    def test_missing_file(self, capsys, tmp_path):
        code, out = run(capsys, 'solve', '--instance', str(tmp_path / 'absent.json'))
        assert code == EXIT_ERROR
        assert out == ''

    def test_bad_gamma(self, capsys):
        code, _ = run(capsys, 'solve', '--instance', 'example3', '--gamma', '1.5')
        assert code == EXIT_ERROR

    def test_malformed_instance(self, capsys, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{"version": 1}', encoding='utf-8')
        code, _ = run(capsys, 'solve', '--instance', str(path))
        assert code == EXIT_ERROR


class TestGenAndVerify:
    def test_gen_to_stdout(self, capsys):
        code, out = run(capsys, 'gen', '--nodes', '9', '--m', '2', '--seed', '4')
        assert code == EXIT_OK
        document = json.loads(out)
        assert document['num_nodes'] == 9
        assert document['m'] == 2
        assert document['metadata']['seed'] == 4

    def test_gen_then_verify(self, capsys, tmp_path):
        path = tmp_path / 'instance.json'
        code, _ = run(capsys, 'gen', '--nodes', '10', '--capacity', 'v2', '--seed', '3', '--out', str(path))
        assert code == EXIT_OK
        assert path.exists()

        code, out = run(capsys, 'verify', '--instance', str(path), '--gamma', 'paper')
        assert code == EXIT_OK
        report = json.loads(out)
        assert report['agreed'] is True
        assert set(report['solutions']) == {'mo', 'rank', 'oracle'}

    def test_disagreement_exit_code(self, capsys, monkeypatch):
        def skewed_verify(*args, **kwargs):
            report = runner.verify(*args, **kwargs)
            report.solutions['rank'].psi += 0.1
            return report

        monkeypatch.setattr(cli, 'verify', skewed_verify)
        code, out = run(capsys, 'verify', '--instance', 'example3', '--no-oracle')
        assert code == EXIT_DISAGREEMENT
        assert json.loads(out)['agreed'] is False


def test_tiny_bench(capsys, tmp_path):
    out_file = tmp_path / 'bench.json'
    code, out = run(capsys, 'bench', '--sizes', '8', '--m', '2,3', '--seeds', '1', '--bounds', 'maxent',
                    '--out', str(out_file), '--repro-dir', str(tmp_path / 'repro'))
    assert code == EXIT_OK
    assert 'p*' in out
    assert len(json.loads(out_file.read_text(encoding='utf-8'))['records']) == 4
