import pytest

from overschur.combinatorics import (
    count_partitions,
    double_map,
    enumerate_partitions,
    i_t_constraint,
    i_t_oracle,
    odd_overpartitions,
    overpartitions,
    podbar_oracle,
    schur_oracle,
    schur_over_oracle,
    unrestricted,
)
from overschur.specialforms import named_series


def test_partition_numbers():
    assert [count_partitions(n, unrestricted()) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert count_partitions(20, unrestricted()) == 627


def test_overpartition_numbers():
    assert [count_partitions(n, overpartitions()) for n in range(7)] == [1, 2, 4, 8, 14, 24, 40]


def test_counts_match_enumeration():
    for c in (unrestricted(), overpartitions(), odd_overpartitions(), i_t_constraint(3, "literal")):
        for n in range(13):
            assert count_partitions(n, c) == sum(1 for _ in enumerate_partitions(n, c))


def test_small_values():
    assert schur_over_oracle(3, 5) == 4
    assert schur_over_oracle(3, 9) == 10
    assert schur_over_oracle(5, 3) == 4
    assert schur_oracle(3, 6) == 2
    assert podbar_oracle(4) == 6
    assert podbar_oracle(6) == 12


def test_i_t_readings_differ():
    assert i_t_oracle(3, 2) == 2
    assert i_t_oracle(3, 10, "bijective") == 4
    assert i_t_oracle(3, 10, "literal") == 10


@pytest.mark.parametrize("t", [3, 5, 9])
def test_bijective_reading_counts_schur_overpartitions(t):
    s = named_series("schur_over", t, 31)
    assert [i_t_oracle(t, 2 * n) for n in range(31)] == s.tolist()


def test_double_map_is_injective_onto_its_image():
    for n in range(12):
        src = list(enumerate_partitions(n, odd_overpartitions()))
        img = {double_map(x) for x in src}
        assert len(img) == len(src)
        target = set()
        for part in enumerate_partitions(2 * n, i_t_constraint(10**6 + 1, "literal")):
            target.add(tuple(k for k, _ in part))
        # image: odd sizes appear exactly twice, even sizes are 2 mod 4
        for p in img:
            assert sum(p) == 2 * n
            for k in set(p):
                if k % 2:
                    assert p.count(k) == 2
                else:
                    assert k % 4 == 2


def test_invalid_arguments():
    with pytest.raises(ValueError):
        schur_over_oracle(4, 3)
    with pytest.raises(ValueError):
        i_t_oracle(3, 5)
    with pytest.raises(ValueError):
        count_partitions(-1, unrestricted())
    with pytest.raises(ValueError):
        i_t_constraint(3, "loose")
