# test_kleene.py - 参照用のレジスタ機械のテスト
import pytest

from kleene import (
    DEC, HALT, INC, JZ, State, encode_program, halting_time, instruction,
    kleene_t, kleene_u, pair, run, step, triples, unpair,
)


class TestPairing:
    def test_first_codes(self):
        assert [unpair(z) for z in range(4)] == [(0, 0), (1, 0), (0, 1), (2, 0)]

    def test_inverse(self):
        for z in range(60):
            assert pair(*unpair(z)) == z

    def test_pair_values(self):
        assert pair(1, 0) == 1
        assert pair(2, 3) == 18


class TestMachine:
    def test_empty_program_halts(self):
        assert instruction(0, 0) == HALT
        assert halting_time(0, 5, 4) == 1
        assert run(0, 5, 3) == State(0, 5, True)

    def test_increment(self):
        e = encode_program([INC, HALT])
        assert e == 1
        assert instruction(e, 0) == INC
        assert instruction(e, 1) == HALT
        assert halting_time(e, 2, 8) == 2
        assert run(e, 2, 2).acc == 3

    def test_decrement_floors_at_zero(self):
        e = encode_program([DEC, DEC])
        assert run(e, 1, 3) == State(2, 0, True)

    def test_jump_on_zero_loops(self):
        e = encode_program([JZ + 0])
        assert e == 6
        assert halting_time(e, 0, 20) is None
        assert halting_time(e, 1, 20) == 2

    def test_halted_state_is_fixed(self):
        s = State(3, 1, True)
        assert step(7, s) is s


class TestKleene:
    def test_t_and_u(self):
        z = pair(2, 3)
        assert kleene_t(1, 2, z)
        assert kleene_u(z) == 3
        assert not kleene_t(1, 2, pair(2, 4))
        assert not kleene_t(1, 2, pair(3, 3))

    def test_halts_in_one_step(self):
        assert kleene_t(0, 0, 1)
        assert kleene_u(1) == 0

    def test_at_most_one_computation(self):
        for e in range(8):
            for x in range(3):
                witnesses = [z for z in range(80) if kleene_t(e, x, z)]
                assert len(witnesses) <= 1, (e, x, witnesses)

    @pytest.mark.parametrize("fuel", [4, 8])
    def test_triples_match_reference(self, fuel):
        found = triples(max_code=6, max_input=2, fuel=fuel)
        assert found
        assert any(t.expected for t in found)
        assert any(not t.expected for t in found)
        assert all(kleene_t(t.e, t.x, t.z) == t.expected for t in found)
