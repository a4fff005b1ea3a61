from datetime import date as Date

from tlsum.dates import find_date_expressions


PUB = Date(2011, 3, 30)


def test_iso_date():
    assert find_date_expressions("Government resigned on 2011-03-29.", PUB) == \
        [Date(2011, 3, 29)]


def test_month_day_year():
    assert find_date_expressions("On March 24, 2011 protests began.", PUB) == \
        [Date(2011, 3, 24)]


def test_day_month_year():
    assert find_date_expressions("Clashes on 24 March 2011 in the capital.", PUB) == \
        [Date(2011, 3, 24)]


def test_relative_days():
    assert find_date_expressions("It happened yesterday.", PUB) == [Date(2011, 3, 29)]
    assert find_date_expressions("Today brings calm.", PUB) == [Date(2011, 3, 30)]
    assert find_date_expressions("Talks resume tomorrow.", PUB) == [Date(2011, 3, 31)]


def test_bare_weekday_resolves_backwards():
    # 2011-03-30 was a Wednesday; the most recent Monday is 03-28
    assert find_date_expressions("Riots erupted Monday.", PUB) == [Date(2011, 3, 28)]
    # same weekday as publication resolves to the publication day itself
    assert find_date_expressions("Quiet since Wednesday.", PUB) == [Date(2011, 3, 30)]


def test_multiple_expressions_in_order():
    text = "On March 24, 2011 talks began and again on 2011-03-29 they stalled."
    assert find_date_expressions(text, PUB) == [Date(2011, 3, 24), Date(2011, 3, 29)]


def test_invalid_calendar_day_ignored():
    assert find_date_expressions("Logged as 2011-02-30 by mistake.", PUB) == []


def test_year_inside_long_form_not_double_counted():
    assert find_date_expressions("March 24, 2011.", PUB) == [Date(2011, 3, 24)]


def test_no_expressions():
    assert find_date_expressions("Protests continued.", PUB) == []


def test_case_insensitive():
    assert find_date_expressions("on MARCH 24, 2011.", PUB) == [Date(2011, 3, 24)]
