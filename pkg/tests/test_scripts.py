import runpy
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize("name,argv", [
    ("ratio_convergence.py", ["--lambdas", "1", "--ns", "16,32"]),
    ("interlacing_survey.py", ["--n-max", "8"]),
    ("limit_constants.py", ["--lambdas", "1,1", "--ns", "10,20"]),
])
def test_script_runs(name, argv, capsys):
    mod = runpy.run_path(str(SCRIPTS / name))
    mod["main"](argv)
    assert capsys.readouterr().out.strip()
