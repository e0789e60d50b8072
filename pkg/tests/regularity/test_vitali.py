import pytest

from nspnp_core.fields import FieldHistory, GridSpec, ParabolicCylinder, State, VectorField
from nspnp_core.regularity import vitali_bound, vitali_cover, vitali_select


def cyl(x, t, r):
    return ParabolicCylinder((x, 0.0), t, r)


class TestVitaliSelect:
    def test_overlapping_cylinders_collapse_to_the_largest(self):
        big, small, far = cyl(0.0, 0.0, 1.0), cyl(0.5, 0.0, 0.5), cyl(5.0, 0.0, 1.0)

        selected = vitali_select([small, far, big])

        assert selected == [big, far]
        assert vitali_cover([small, far, big]) == 10.0

    def test_time_separation_counts(self):
        early, late = cyl(0.0, 0.0, 1.0), cyl(0.0, 4.0, 1.0)

        assert vitali_select([early, late]) == [early, late]

    def test_selection_ignores_the_input_order(self):
        family = [cyl(0.3 * k, 0.0, 0.2 + 0.05 * (k % 3)) for k in range(10)]

        assert vitali_select(family) == vitali_select(list(reversed(family)))

    def test_duplicates_collapse(self):
        c = cyl(0.0, 0.0, 1.0)

        assert vitali_select([c, c, c]) == [c]

    def test_empty_family(self):
        assert vitali_select([]) == []
        assert vitali_cover([]) == 0.0


def test_bound_of_a_uniform_flow_vanishes():
    grid = GridSpec.uniform(2, 32)
    u = VectorField.constant(grid, (1.0, 0.0))
    history = FieldHistory(State.zeros(grid, k * 0.0125).replace(u=u) for k in range(9))
    family = [
        ParabolicCylinder((0.5, 0.5), 0.1, 0.125),
        ParabolicCylinder((0.5, 0.55), 0.1, 0.125),
    ]

    result = vitali_bound(history, family, 0.1)

    assert len(result.selected) == 1
    assert result.cover_sum == pytest.approx(0.625)
    assert result.bound == 0.0
