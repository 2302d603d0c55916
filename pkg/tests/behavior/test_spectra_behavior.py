from pytest_bdd import scenario


@scenario('features/spectra.feature', 'The disk spectrum without a field')
def test_disk_without_field():
    pass


@scenario('features/spectra.feature', 'The lowest 4-ball mode follows its closed form')
def test_ball4_closed_form():
    pass


@scenario('features/spectra.feature', 'Steklov values match their boundary partner without a field')
def test_gaps_without_field():
    pass


@scenario('features/spectra.feature', 'The lowest circle eigenvalue is the squared distance to the integers')
def test_circle_lowest_value():
    pass
