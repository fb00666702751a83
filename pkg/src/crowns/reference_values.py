"""Published numerical values used by ``--check`` and the test-suite."""

from __future__ import annotations

# n -> (z1, z2)
ZEROS = {
    3: (0.413887932417, 1.619789608802),
    4: (0.697380509876, 1.602408486212),
    5: (0.822182869908, 1.597921728909),
    6: (0.884321138125, 1.592235355387),
    7: (0.918990363772, 1.584120901279),
    8: (0.940138179122, 1.574515176634),
    9: (0.953949939513, 1.564321826382),
    10: (0.963459881269, 1.554123467683),
    100: (0.999674025507, 1.352557858581),
    500: (0.999986989988, 1.279569044474),
    1000: (0.999996754292, 1.256683821749),
    5000: (0.999999869916, 1.215703126473),
}

# n -> ((lo, hi) of the central admissible interval, cos(pi/n))
CENTRAL = {
    3: ((0.617364128382, 1.619789608802), 0.5),
    4: ((0.697380509876, 1.433937406966), 0.707106781187),
    5: ((0.822182869908, 1.216274428233), 0.809016994375),
    6: ((0.884321138125, 1.130810920250), 0.866025403784),
    7: ((0.918990363772, 1.088150691695), 0.900968867902),
    8: ((0.940138179122, 1.063673428234), 0.923879532511),
    9: ((0.953949939513, 1.048273036749), 0.939692620786),
    10: ((0.963459881269, 1.037925936971), 0.951056516295),
    100: ((0.999674025507, 1.00032608079), 0.999506560366),
    500: ((0.999986989988, 1.00001301018), 0.999980339576),
    1000: ((0.999996754292, 1.00000324572), 0.999995075057),
    5000: ((0.999999869916, 1.00000013008), 0.999999802608),
}

# n = 3 local extrema of H for a > 1, and H(1/cos(pi/4)) for n = 4
M_STAR = 1.0007682
M_STAR_STAR = 35.70017694
M_BAR = 16.05679941

# Cells that match a neighbouring n instead of the labelled one.
# The "1000" rows of both tables agree with n = 1001 to ~3e-13 in every
# column and differ from n = 1000 by up to 3e-5. The cos(pi/n) entry of
# the "500" row is cos(pi/501); its interval is correct for n = 500.
SUSPECT_ZEROS = {1000: 1001}
SUSPECT_CENTRAL = {1000: 1001}
SUSPECT_COS = {500: 501, 1000: 1001}

TABLE_TOL = 1e-9
BIFURCATION_TOL = 1e-6
