import pytest

from nspnp_core.exceptions import ConfigValidationException
from nspnp_core.models import PicardConfig
from nspnp_core.simulation import load_section, load_sim_config, parse_config


def config_data(**time) -> dict:
    return {
        'grid': {'dims': 2, 'cells': [8, 8], 'lengths': [1.0, 1.0], 'bc': 'wall'},
        'time': {'t_end': 0.1, 'dt': 0.025, 'blocks': 1, **time},
    }


TOML = """
seed = 3

[grid]
dims = 2
cells = [16, 16]
lengths = [1.0, 1.0]

[time]
t_end = 0.2
dt = 0.025
blocks = 2

[initial]
preset = "charged_blob"
"""


class TestSimConfig:
    def test_derived_quantities(self):
        config = parse_config(config_data())

        assert config.epsilon == pytest.approx(0.1)
        assert config.steps_per_block == 4
        assert config.steps == 4
        assert config.snapshots == 5
        assert config.mollifier_spec.epsilon == pytest.approx(0.1)
        assert config.np_params.dt == 0.025
        assert config.ns_params.force_form == 'maxwell_stress'

    def test_time_step_must_divide_the_block(self):
        with pytest.raises(ConfigValidationException) as excinfo:
            parse_config(config_data(dt=0.03))

        assert 'must divide the block length' in str(excinfo.value)
        assert excinfo.value.component == 'config'

    def test_block_must_resolve_the_mollifier(self):
        data = config_data(dt=0.05)
        data['mollifier'] = {'kernel_resolution': 4}

        with pytest.raises(ConfigValidationException) as excinfo:
            parse_config(data)

        assert 'the mollifier needs at least 4' in str(excinfo.value)

    def test_direct_mode_ignores_the_mollifier_resolution(self):
        data = config_data(dt=0.05, mollified=False)
        data['mollifier'] = {'kernel_resolution': 4}

        assert parse_config(data).steps == 2

    def test_snapshot_interval_must_divide_the_steps(self):
        data = config_data()
        data['output'] = {'snapshot_every': 2}
        assert parse_config(data).snapshots == 3

        data['output'] = {'snapshot_every': 3}

        with pytest.raises(ConfigValidationException) as excinfo:
            parse_config(data)

        assert 'snapshot_every=3 must divide the 4 steps' in str(excinfo.value)

    def test_unknown_keys_are_rejected(self):
        data = config_data(bogus=1)

        with pytest.raises(ConfigValidationException) as excinfo:
            parse_config(data)

        assert 'time.bogus' in str(excinfo.value)

    def test_fingerprint_is_stable(self):
        assert parse_config(config_data()).fingerprint() == parse_config(
            config_data()
        ).fingerprint()
        assert parse_config(config_data()).fingerprint() != parse_config(
            config_data(dt=0.05)
        ).fingerprint()


class TestLoading:
    def test_load_from_toml(self, tmp_path):
        path = tmp_path / 'run.toml'
        path.write_text(TOML)

        config = load_sim_config(path)

        assert config.seed == 3
        assert config.grid.cells == (16, 16)
        assert config.grid.bc == 'periodic'
        assert config.steps == 8
        assert config.initial.preset == 'charged_blob'

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigValidationException) as excinfo:
            load_sim_config(tmp_path / 'absent.toml')

        assert 'Configuration file not found' in str(excinfo.value)

    def test_syntax_error(self, tmp_path):
        path = tmp_path / 'broken.toml'
        path.write_text('[grid\ndims = 2\n')

        with pytest.raises(ConfigValidationException) as excinfo:
            load_sim_config(path)

        assert excinfo.value.details['source'] == str(path)

    def test_absent_section_gives_defaults(self, tmp_path):
        path = tmp_path / 'run.toml'
        path.write_text(TOML)

        picard = load_section(path, 'picard', PicardConfig)

        assert picard == PicardConfig()

    def test_section_errors_name_the_table(self, tmp_path):
        path = tmp_path / 'run.toml'
        path.write_text(TOML + '\n[picard]\nt_shrink = 2.0\n')

        with pytest.raises(ConfigValidationException) as excinfo:
            load_section(path, 'picard', PicardConfig)

        assert 't_shrink' in str(excinfo.value)
        assert excinfo.value.details['source'].endswith(':[picard]')
