"""Parcel axioms and the two construction routes."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratsum import (
    Arrow,
    Biset,
    GroupParcelSpec,
    Parcel,
    from_components,
    from_group_spec,
    full_group_spec,
    inverse,
    trivial_parcel,
    validate_parcel,
)
from stratsum.groups import (
    biset_closure,
    cyclic_table,
    direct_product_table,
    subgroup_closure,
    symmetric_table,
)
from stratsum.parcel import pair_classes, quotient_biset

SMALL_GROUPS = [cyclic_table(n) for n in range(1, 9)] + [
    symmetric_table(3),
    direct_product_table(cyclic_table(2), cyclic_table(2)),
    direct_product_table(cyclic_table(2), cyclic_table(4)),
]


def random_spec(table, rng) -> GroupParcelSpec:
    n = len(table)

    def subgroup():
        gens = [rng.randrange(n) for _ in range(rng.randrange(3))]
        return subgroup_closure(table, gens)

    g1, g2, g3 = subgroup(), subgroup(), subgroup()
    x12 = biset_closure(table, (rng.randrange(n),), g1, g2)
    x23 = biset_closure(table, (rng.randrange(n),), g2, g3)
    return GroupParcelSpec(tuple(map(tuple, table)), g1, g2, g3, x12, x23)


class TestValidateParcel:
    def test_trivial(self):
        assert validate_parcel(trivial_parcel()).ok

    def test_absorbing_element_is_rejected(self):
        p = trivial_parcel()
        # G2 becomes {e, z} with z absorbing: z*z = z has no inverse
        p.hom_sizes[(2, 2)] = 2
        p.tables[(2, 2, 2)] = ((0, 1), (1, 1))
        p.tables[(1, 2, 2)] = ((0, 0),)
        p.tables[(2, 2, 3)] = ((0,), (0,))
        rep = validate_parcel(p)
        assert "non-invertible-endomorphism" in rep.codes()

    def test_broken_associativity_is_rejected(self):
        p = from_group_spec(full_group_spec(cyclic_table(3)))
        rows = [list(r) for r in p.tables[(1, 2, 3)]]
        rows[1][1] = 0
        p.tables[(1, 2, 3)] = tuple(map(tuple, rows))
        assert "associativity" in validate_parcel(p).codes()

    def test_missing_table_is_rejected(self):
        p = trivial_parcel()
        del p.tables[(1, 2, 3)]
        assert "table-keys" in validate_parcel(p).codes()


class TestFromGroupSpec:
    def test_full_z2(self):
        p = from_group_spec(full_group_spec(cyclic_table(2)))
        assert all(size == 2 for size in p.hom_sizes.values())
        assert p.compose(Arrow(1, 2, 1), Arrow(2, 3, 1)) == Arrow(1, 3, 0)
        assert validate_parcel(p).ok

    def test_s3_example(self):
        # permutations in lexicographic one-line order; index 2 swaps the
        # first two letters, indices 0, 3, 4 are the even permutations
        s3 = symmetric_table(3)
        spec = GroupParcelSpec(
            s3, (0, 3, 4), (0, 2), tuple(range(6)), tuple(range(6)), tuple(range(6))
        )
        p = from_group_spec(spec)
        assert validate_parcel(p).ok
        assert p.hom_size(1, 3) == 6

    def test_z4_subgroup_example(self):
        spec = GroupParcelSpec(cyclic_table(4), (0, 2), (0, 2), (0, 2), (1, 3), (1, 3))
        p = from_group_spec(spec)
        assert validate_parcel(p).ok
        assert p.ambient_labels[(1, 3)] == (0, 2)

    def test_closure_violation_is_rejected(self):
        with pytest.raises(ValueError, match="closed"):
            from_group_spec(
                GroupParcelSpec(cyclic_table(4), (0, 2), (0,), (0,), (1,), (0,))
            )
        with pytest.raises(ValueError, match="identity"):
            from_group_spec(
                GroupParcelSpec(cyclic_table(4), (1,), (0,), (0,), (0,), (0,))
            )

    def test_empty_defect_sets_are_allowed(self):
        spec = GroupParcelSpec(cyclic_table(2), (0, 1), (0, 1), (0, 1), (), ())
        p = from_group_spec(spec)
        assert validate_parcel(p).ok
        assert p.hom_size(1, 2) == 0 and p.hom_size(1, 3) == 0

    @settings(max_examples=40, deadline=None)
    @given(st.randoms(use_true_random=False), st.sampled_from(SMALL_GROUPS))
    def test_random_specs_validate(self, rng, table):
        p = from_group_spec(random_spec(table, rng))
        assert validate_parcel(p).ok


class TestInverse:
    def test_identity_is_self_inverse(self):
        p = trivial_parcel()
        assert inverse(p, Arrow(2, 2, 0)) == Arrow(2, 2, 0)

    def test_z4(self):
        p = from_group_spec(full_group_spec(cyclic_table(4)))
        assert inverse(p, Arrow(3, 3, 1)) == Arrow(3, 3, 3)

    def test_exhaustive_inverse_law(self):
        p = from_group_spec(full_group_spec(symmetric_table(3)))
        for i in (1, 2, 3):
            for g in p.arrows(i, i):
                assert p.compose(g, inverse(p, g)) == p.identity(i)
                assert inverse(p, inverse(p, g)) == g

    def test_non_endomorphism_rejected(self):
        with pytest.raises(ValueError):
            inverse(trivial_parcel(), Arrow(1, 2, 0))


def translation_biset(table, left_elems, right_elems, carrier):
    """Biset structure on a subset of an ambient group by translation."""
    index = {g: i for i, g in enumerate(carrier)}
    left = tuple(
        tuple(index[table[g][x]] for x in carrier) for g in left_elems
    )
    right = tuple(
        tuple(index[table[x][g]] for g in right_elems) for x in carrier
    )
    return Biset(len(carrier), left, right)


def sub_table(table, elems):
    index = {g: i for i, g in enumerate(elems)}
    return tuple(tuple(index[table[a][b]] for b in elems) for a in elems)


class TestFromComponents:
    def test_trivial(self):
        one = cyclic_table(1)
        b = Biset(1, ((0,),), ((0,),))
        p = from_components(one, one, one, b, b, b, (0,))
        assert validate_parcel(p).ok

    def test_free_z2_quotient(self):
        one, z2 = cyclic_table(1), cyclic_table(2)
        x12 = Biset(2, ((0, 1),), ((0, 1), (1, 0)))
        x23 = Biset(2, ((0, 1), (1, 0)), ((0,), (1,)))
        _, n = pair_classes(z2, x12, x23)
        assert n == 2
        x13, class_map = quotient_biset(one, z2, one, x12, x23)
        p = from_components(one, z2, one, x12, x23, x13, range(n))
        assert validate_parcel(p).ok
        assert p.hom_size(1, 3) == 2
        assert set(class_map.values()) == {0, 1}

    def test_bad_phi_is_rejected(self):
        one, z2 = cyclic_table(1), cyclic_table(2)
        x12 = Biset(2, ((0, 1),), ((0, 1), (1, 0)))
        x23 = Biset(2, ((0, 1), (1, 0)), ((0,), (1,)))
        x13, _ = quotient_biset(one, z2, one, x12, x23)
        with pytest.raises(ValueError):
            from_components(one, z2, one, x12, x23, x13, (0, 0, 0))

    @settings(max_examples=15, deadline=None)
    @given(st.randoms(use_true_random=False), st.sampled_from(SMALL_GROUPS[:8]))
    def test_universal_construction(self, rng, table):
        spec = random_spec(table, rng)
        g1 = sub_table(table, spec.g1)
        g2 = sub_table(table, spec.g2)
        g3 = sub_table(table, spec.g3)
        x12 = translation_biset(table, spec.g1, spec.g2, spec.x12)
        x23 = translation_biset(table, spec.g2, spec.g3, spec.x23)
        x13, _ = quotient_biset(g1, g2, g3, x12, x23)
        p = from_components(g1, g2, g3, x12, x23, x13, range(x13.size))
        assert validate_parcel(p).ok

    def test_action_commutativity_holds_in_every_group_spec_parcel(self):
        p = from_group_spec(
            GroupParcelSpec(cyclic_table(4), (0, 2), (0, 2), (0, 2), (1, 3), (1, 3))
        )
        for x, g, y in itertools.product(p.arrows(1, 2), p.arrows(2, 2), p.arrows(2, 3)):
            assert p.compose(p.compose(x, g), y) == p.compose(x, p.compose(g, y))
