import pytest

from markermt.network import (
    ConceptNode,
    ConceptSequence,
    MemoryNetwork,
    NetworkError,
    SequenceElement,
    load_network,
    lookup_lexical,
    serialize_network,
    validate_network,
)


def test_fixture_loads_fully_indexed(net):
    assert "ask-way" in net.concepts
    assert net.concepts["ask-way"].sentence_type == "question"
    assert net.sequences["kcs1"].paired == "ecs1"
    assert net.sequences["kcs1"].elements[0].etype == "OF"
    assert net.sequences["kcs1"].elements[2].literal == "kanun"
    assert net.morpheme_index[("ko", ("pha-il", "tul", "ul"))] == frozenset({"files-ko"})


def test_fixture_validates_clean(net):
    assert validate_network(net) == []


def test_lookup_exact_match(net):
    assert lookup_lexical(net, "ko", ("pha-il",)) == {"file-ko"}
    assert lookup_lexical(net, "en", ("way",)) == {"way-en"}
    assert lookup_lexical(net, "en", ("zzz",)) == frozenset()
    # exact tuples only: prefix of a longer item does not match it
    assert lookup_lexical(net, "ko", ("pha-il", "tul")) == frozenset()


def test_lookup_iff_item_exists(net):
    for item in net.lexicon.values():
        found = lookup_lexical(net, item.language, item.morphemes)
        assert item.id in found


def test_serialize_round_trip(net, travel_text):
    text = serialize_network(net)
    reloaded = load_network(text)
    assert reloaded.concepts == net.concepts
    assert reloaded.lexicon == net.lexicon
    assert reloaded.sequences == net.sequences
    assert reloaded.affixes == net.affixes
    assert reloaded.morph_rules == net.morph_rules
    assert serialize_network(reloaded) == text


def test_empty_file_rejected():
    with pytest.raises(NetworkError, match="no concepts"):
        load_network("")


def test_self_pairing_rejected():
    text = "concept a\nlex l ko w isa a\ncs s ko of a pair s : a(CX)\n"
    with pytest.raises(NetworkError, match="pairing must cross languages"):
        load_network(text)


def test_same_language_pairing_rejected():
    text = (
        "concept a\nlex l ko w isa a\n"
        "cs s1 ko of a pair s2 : a(CX)\n"
        "cs s2 ko of a pair s1 : a(CX)\n"
    )
    with pytest.raises(NetworkError, match="cross languages"):
        load_network(text)


def test_duplicate_id_rejected():
    with pytest.raises(NetworkError, match="duplicate concept id 'a'"):
        load_network("concept a\nconcept a\n")


def test_dangling_reference_rejected():
    with pytest.raises(NetworkError, match="dangling concept reference 'ghost'"):
        load_network("concept a\nlex l ko w isa ghost\n")


def test_syntax_error_reports_line():
    with pytest.raises(NetworkError, match="line 2"):
        load_network("concept a\nfrobnicate b\n")


def test_bad_element_rejected():
    with pytest.raises(NetworkError, match="bad element"):
        load_network("concept a\ncs s ko of a pair s : a(ZZ)\n")


def test_undeclared_affix_in_item_rejected():
    text = "concept a\nlex l ko w+qq isa a\n"
    with pytest.raises(NetworkError, match="undeclared affix 'qq'"):
        load_network(text)


def test_default_item_language_must_match_sequence():
    text = (
        "concept a\nlex ka ko wa isa a\nlex ea en va isa a\n"
        "cs s1 ko of a pair s2 : a(OX)=ea a(CX)\n"
        "cs s2 en of a pair s1 : a(CX)\n"
    )
    with pytest.raises(NetworkError, match="must be a ko item"):
        load_network(text)


def test_all_omissible_sequence_rejected_at_load():
    text = (
        "concept a\nlex l ko w isa a\nlex e en v isa a\n"
        "cs s1 ko of a pair s2 : a(OF)\n"
        "cs s2 en of a pair s1 : a(CX)\n"
    )
    with pytest.raises(NetworkError, match="every element is omissible"):
        load_network(text)


# -- validator mutation tests: each broken invariant yields a diagnostic ----


def _codes(diags):
    return {d.code for d in diags}


def test_isa_self_loop_diagnosed(travel_text):
    net = load_network(travel_text + "\nconcept zz isa zz\n")
    assert "isa-cycle" in _codes(validate_network(net))


def test_isa_two_cycle_diagnosed(travel_text):
    net = load_network(travel_text + "\nconcept z1 isa z2\nconcept z2 isa z1\n")
    assert "isa-cycle" in _codes(validate_network(net))


def test_asymmetric_pairing_diagnosed(travel_text):
    mutated = travel_text.replace("cs kcs-loc ko of kennedy-park pair ecs-loc",
                                  "cs kcs-loc ko of kennedy-park pair ecs1")
    net = load_network(mutated)
    assert "asymmetric-pairing" in _codes(validate_network(net))


def test_english_free_element_diagnosed(travel_text):
    mutated = travel_text.replace('"you"(CX) edit(CX) "the"(CX) files(CX)',
                                  '"you"(CX) edit(CX) "the"(CX) files(OF)')
    net = load_network(mutated)
    diags = validate_network(net)
    assert "english-cse-type" in _codes(diags)
    assert any("must be CX" in d.message for d in diags)


def test_unreachable_filler_diagnosed(travel_text):
    mutated = travel_text + (
        "\nconcept ghost\nconcept ghostx\n"
        "cs kcs9 ko of ghost pair ecs9 : ghostx(CX)\n"
        "cs ecs9 en of ghost pair kcs9 : ghostx(CX)\n"
    )
    net = load_network(mutated)
    assert "unreachable-filler" in _codes(validate_network(net))


def test_all_omissible_diagnosed_on_handbuilt_network():
    net = MemoryNetwork()
    net.concepts["a"] = ConceptNode(id="a", name="a")
    net.sequences["s1"] = ConceptSequence(
        id="s1", language="ko", owner="a",
        elements=(SequenceElement(etype="OF", concept="a"),), paired="s2",
    )
    net.sequences["s2"] = ConceptSequence(
        id="s2", language="en", owner="a",
        elements=(SequenceElement(etype="CX", concept="a"),), paired="s1",
    )
    net.build_indexes()
    assert "all-omissible" in _codes(validate_network(net))


def test_ungeneratable_target_diagnosed():
    # target requires concept b but the source side can never supply it
    text = (
        "concept a\nconcept b\n"
        "lex ka ko wa isa a\nlex ea en va isa a\n"
        "lex kb ko wb isa b\nlex eb en vb isa b\n"
        "concept top\n"
        "cs s1 ko of top pair s2 : a(CX)\n"
        "cs s2 en of top pair s1 : a(CX) b(CX)\n"
    )
    net = load_network(text)
    assert "ungeneratable-element" in _codes(validate_network(net))


def test_omissible_reference_cycle_diagnosed():
    text = (
        "concept a\nlex ka ko wa isa a\nlex ea en va isa a\n"
        "concept n1\nconcept n2\n"
        "cs c1 ko of n1 pair m1 : a(CX) n2(OF)\n"
        "cs m1 en of n1 pair c1 : a(CX)\n"
        "cs c2 ko of n2 pair m2 : a(CX) n1(OF)\n"
        "cs m2 en of n2 pair c2 : a(CX)\n"
    )
    net = load_network(text)
    assert "omissible-cycle" in _codes(validate_network(net))
