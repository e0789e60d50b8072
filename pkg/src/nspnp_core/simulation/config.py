import hashlib
import json
import tomllib
from pathlib import Path
from typing import Literal, Optional, Self

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from nspnp_core.exceptions import ConfigValidationException
from nspnp_core.fields import GridSpec
from nspnp_core.models.parameters import (
    AdvectionScheme,
    EllipticConfig,
    ForceForm,
    NPStepParams,
    NSStepParams,
    PicardConfig,
    RegularityConfig,
)
from nspnp_core.mollifier import MollifierSpec

Preset = Literal[
    'zero', 'taylor_green', 'charged_blob', 'sinusoidal_charges', 'random_smooth'
]

DIVISIBILITY_RTOL = 1e-9


class TimeSection(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    t_end: float = Field(gt=0)
    """Final time."""

    dt: float = Field(gt=0)
    """Time step; must divide the block length ``t_end / blocks``."""

    blocks: int = Field(default=1, ge=1)
    """Number of blocks M; the retardation scale is ``t_end / blocks``."""

    mollified: bool = True
    """Drive the transport with the retarded mollification instead of the current velocity."""

    max_cfl: float = Field(default=10.0, gt=0)
    """Advective CFL number above which the run stops."""


class MollifierSection(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    kernel_resolution: int = Field(default=2, ge=2)
    """Minimum number of steps per block."""

    length_scale: float = Field(default=1.0, gt=0)
    """Spatial support radius per unit of ``sqrt(epsilon * tau)``."""


class InitialSection(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    preset: Preset = 'zero'
    """Initial condition family."""

    velocity: float = Field(default=1.0, ge=0)
    """Velocity amplitude (taylor_green, random_smooth)."""

    charge: float = Field(default=0.1, ge=0)
    """Charge perturbation amplitude (charged_blob, sinusoidal_charges, random_smooth)."""

    background: float = Field(default=1.0, ge=0)
    """Uniform density of both species underneath the perturbation."""

    width: float = Field(default=0.1, gt=0)
    """Standard deviation of the charged blob, relative to the shortest box side."""

    modes: int = Field(default=2, ge=1)
    """Highest Fourier mode of the random_smooth preset."""


class OutputSection(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    directory: Path = Path('output')
    """Where snapshots, ledgers and the manifest are written."""

    snapshot_every: int = Field(default=1, ge=1)
    """Emit a snapshot every this many steps."""

    write: bool = True
    """Write files; when false the run only returns the history."""


class PhysicsSection(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    force_form: ForceForm = 'maxwell_stress'
    """Form of the electric body force."""

    advection: AdvectionScheme = 'centered'
    """Face values in the drift fluxes."""

    clip_in_flux: bool = True
    """Use positive parts of the densities in the electric flux."""


class SimConfig(BaseModel):
    """Everything a coupled run needs, as read from a TOML file."""

    model_config = ConfigDict(frozen=True, extra='forbid')

    grid: GridSpec
    time: TimeSection
    mollifier: MollifierSection = MollifierSection()
    initial: InitialSection = InitialSection()
    output: OutputSection = OutputSection()
    solver: EllipticConfig = EllipticConfig()
    physics: PhysicsSection = PhysicsSection()
    picard: PicardConfig = PicardConfig()
    regularity: RegularityConfig = RegularityConfig()
    seed: int = 0

    @model_validator(mode='after')
    def _check_blocks(self) -> Self:
        ratio = self.epsilon / self.time.dt
        if abs(ratio - round(ratio)) > DIVISIBILITY_RTOL * max(ratio, 1.0) or round(ratio) < 1:
            raise ValueError(
                f'dt={self.time.dt} must divide the block length {self.epsilon}.'
            )
        if self.time.mollified and round(ratio) < self.mollifier.kernel_resolution:
            raise ValueError(
                f'A block spans {round(ratio)} steps, the mollifier needs at least '
                f'{self.mollifier.kernel_resolution}.'
            )
        if self.steps % self.output.snapshot_every != 0:
            raise ValueError(
                f'snapshot_every={self.output.snapshot_every} must divide the '
                f'{self.steps} steps of the run.'
            )
        return self

    @property
    def epsilon(self) -> float:
        return self.time.t_end / self.time.blocks

    @property
    def steps_per_block(self) -> int:
        return int(round(self.epsilon / self.time.dt))

    @property
    def steps(self) -> int:
        return self.steps_per_block * self.time.blocks

    @property
    def snapshots(self) -> int:
        """States emitted by a run, the initial one included."""
        return self.steps // self.output.snapshot_every + 1

    @property
    def mollifier_spec(self) -> MollifierSpec:
        return MollifierSpec(
            epsilon=self.epsilon,
            kernel_resolution=self.mollifier.kernel_resolution,
            length_scale=self.mollifier.length_scale,
        )

    @property
    def np_params(self) -> NPStepParams:
        return NPStepParams(
            dt=self.time.dt,
            clip_in_flux=self.physics.clip_in_flux,
            advection=self.physics.advection,
        )

    @property
    def ns_params(self) -> NSStepParams:
        return NSStepParams(
            dt=self.time.dt,
            force_form=self.physics.force_form,
            advection=self.physics.advection,
        )

    def fingerprint(self) -> str:
        """sha256 of the canonical JSON form, stable across runs."""
        canonical = json.dumps(self.model_dump(mode='json'), sort_keys=True)
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def _validation_message(error: ValidationError) -> str:
    return '; '.join(
        f'{".".join(str(p) for p in e["loc"]) or "config"}: {e["msg"]}'
        for e in error.errors()
    )


def parse_config(data: dict, model: type[BaseModel] = SimConfig, source: Optional[str] = None):
    """Validate a decoded configuration mapping.

    Raises
    ------
    ConfigValidationException
        If the mapping does not describe a valid configuration
    """
    try:
        return model.model_validate(data)
    except ValidationError as ex:
        raise ConfigValidationException(
            _validation_message(ex), 'config', {'source': source} if source else None
        ) from ex


def load_toml(path: str | Path) -> dict:
    """Read a TOML file, reporting syntax errors as configuration errors."""
    path = Path(path)
    try:
        with path.open('rb') as handle:
            return tomllib.load(handle)
    except FileNotFoundError as ex:
        raise ConfigValidationException(
            f'Configuration file not found: {path}', 'config'
        ) from ex
    except tomllib.TOMLDecodeError as ex:
        raise ConfigValidationException(str(ex), 'config', {'source': str(path)}) from ex


def load_sim_config(path: str | Path) -> SimConfig:
    return parse_config(load_toml(path), SimConfig, str(path))


def load_section(path: str | Path, section: str, model: type[BaseModel]):
    """Validate a single table of a TOML file, defaults when the table is absent."""
    data = load_toml(path)
    return parse_config(data.get(section, {}), model, f'{path}:[{section}]')
