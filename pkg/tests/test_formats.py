import random

import pytest

from dfalab import Dfa, ParseError, ValidationError
from dfalab.corpus import random_dfa, random_machine
from dfalab.formats import (emit_dfa, emit_instance_paths, emit_metadata,
                            emit_ntm, load_instance, parse_dfa,
                            parse_instance_paths, parse_metadata, parse_ntm,
                            save_instance)

from conftest import unary_mod

SAMPLE = """\
# comment line
dfa sample
alphabet 0 1
states 2
initial 0
final 1
trans 0 0 0
trans 0 1 1   # inline comment
trans 1 0 1
trans 1 1 1
"""


class TestDfaFormat:
    def test_parse_sample(self):
        d = parse_dfa(SAMPLE)
        assert d.name == "sample"
        assert d.n_states == 2
        assert d.accepts("01")
        assert not d.accepts("00")

    def test_round_trip_random(self):
        rng = random.Random(31)
        for i in range(25):
            d = random_dfa(rng, alphabet=("a", "b", "c")[:rng.randint(1, 3)],
                           max_states=5, name=f"rt{i}")
            assert parse_dfa(emit_dfa(d)) == d

    def test_emission_is_byte_stable(self):
        d = unary_mod(3, 1)
        assert emit_dfa(d) == emit_dfa(parse_dfa(emit_dfa(d)))

    def test_duplicate_transition_rejected(self):
        text = SAMPLE + "trans 0 0 1\n"
        with pytest.raises(ParseError) as err:
            parse_dfa(text)
        assert "line 11" in str(err.value)

    def test_omitted_transitions_add_one_dead_state(self):
        text = """dfa gap
alphabet a b
states 2
initial 0
final 1
trans 0 a 1
"""
        d = parse_dfa(text)
        assert d.n_states == 3          # declared + 1
        assert d.dead == {2}
        assert d.accepts("a")
        assert not d.accepts("b")
        assert not d.accepts("ba")

    def test_strict_mode_rejects_partial_tables(self):
        text = "dfa gap\nalphabet a\nstates 2\ninitial 0\nfinal 1\ntrans 0 a 1\n"
        with pytest.raises(ValidationError):
            parse_dfa(text, strict=True)
        parse_dfa(text)  # non-strict is fine

    def test_quoted_multichar_tokens(self):
        d = Dfa(("go", "stop"), [[0, 1], [1, 1]], 0, [1], name="words")
        text = emit_dfa(d)
        assert '"go"' in text and '"stop"' in text
        assert parse_dfa(text) == d

    def test_unknown_symbol_in_trans(self):
        text = "dfa x\nalphabet a\nstates 1\ninitial 0\nfinal\ntrans 0 q 0\n"
        with pytest.raises(ParseError):
            parse_dfa(text)

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_dfa("alphabet a\n")


class TestNtmFormat:
    def test_round_trip(self, contains1):
        assert parse_ntm(emit_ntm(contains1)) == contains1

    def test_round_trip_random(self):
        rng = random.Random(7)
        for i in range(25):
            m = random_machine(rng, max_states=4, name=f"m{i}")
            assert parse_ntm(emit_ntm(m)) == m

    def test_hash_is_a_tape_symbol_not_a_comment(self):
        text = """ntm hashy
states 2
initial 0
accept 1
delta 0 0 # -> 1 # L R
"""
        m = parse_ntm(text)
        assert (0, "0", "#") in m.delta

    def test_whole_line_comments(self):
        text = "# heading\nntm c\nstates 1\ninitial 0\naccept 0\n"
        assert parse_ntm(text).name == "c"

    def test_unknown_move_token(self):
        text = "ntm x\nstates 2\ninitial 0\naccept 1\ndelta 0 0 0 -> 1 0 Q S\n"
        with pytest.raises(ParseError) as err:
            parse_ntm(text)
        assert "line 5" in str(err.value)

    def test_accepting_with_outgoing_is_invalid(self):
        text = "ntm x\nstates 1\ninitial 0\naccept 0\ndelta 0 0 0 -> 0 0 S S\n"
        with pytest.raises(ValidationError):
            parse_ntm(text)


class TestInstanceFormat:
    def test_paths_round_trip(self):
        paths = ["a.dfa", "b.dfa", "a.dfa"]
        assert parse_instance_paths(emit_instance_paths(paths)) == paths

    def test_order_is_significant(self):
        assert parse_instance_paths("use b.dfa\nuse a.dfa\n") == ["b.dfa", "a.dfa"]

    def test_save_and_load(self, tmp_path, mod_instance):
        int_path = save_instance(mod_instance, tmp_path, "mods")
        loaded, paths = load_instance(int_path)
        assert loaded == mod_instance
        assert len(paths) == 2

    def test_bad_directive(self):
        with pytest.raises(ParseError):
            parse_instance_paths("include a.dfa\n")


class TestMetadata:
    def test_round_trip(self):
        meta = {"machine": "m", "input": "0110", "k": "1"}
        assert parse_metadata(emit_metadata(meta)) == meta

    def test_bad_line(self):
        with pytest.raises(ParseError):
            parse_metadata("just words\n")
