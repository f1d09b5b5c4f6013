"""Frozen reference values for the 3-product benchmark market.

``TRUTH`` holds fixed points recomputed independently at 50-digit precision
(mpmath coordinate iteration + lambertw, cross-checked against brute-force
grid maximization of revenues), frozen here to 13 significant digits.

``PRINTED`` holds the 3-decimal values of the published reference tables as
printed. Several printed entries differ from the recomputed fixed points by
up to ~2e-3 (the tables were evidently produced from unrounded parameter
draws), and the r=0.2 share of product 3 (0.134) contradicts the table's
own revenue column (9.298 * 0.134 = 1.246 != 1.298); the recomputed
0.1395 * 9.297 = 1.297 matches it.
"""

BENCHMARK_G = (0.993, 0.480, 0.159)
BENCHMARK_BETA = 0.1
R_VALUES = (0.2, 0.4, 0.6, 0.8)

UTILITY_HORIZON = 10_000_000

TRUTH = {
    0.2: dict(
        p_nash=(11.46035330715, 9.912672073245, 9.297043352771),
        shares=(0.3019412416361, 0.1929522190498, 0.1395113805062, 0.3655951588079),
        revenues=(3.460353307149, 1.912672073245, 1.297043352771),
        p_mono=15.49666282998,
        shares_mono=(0.2574277935704, 0.1355701566336, 0.09076187036051, 0.5162401794355),
        v_nash=(2.831079250546, 2.383289404784, 2.058992994843),
        v_mono=(2.39554966489, 1.75429966489, 1.35304966489),
    ),
    0.4: dict(
        p_nash=(9.268877308378, 7.510081015492, 6.899540339411),
        shares=(0.352672411083, 0.2010738648993, 0.1303768505089, 0.3158768735088),
        revenues=(3.268877308378, 1.510081015492, 0.8995403394114),
        p_mono=12.52202655099,
        shares_mono=(0.3110709761822, 0.1322932574039, 0.07748009815466, 0.4791556682592),
        v_nash=(6.096464302806, 5.534597018287, 5.101353797633),
        v_mono=(5.720941975842, 4.865941975842, 4.330941975842),
    ),
    0.6: dict(
        p_nash=(7.242606907815, 5.082963951086, 4.497183335879),
        shares=(0.4477126743294, 0.2130575706434, 0.1105543845439, 0.2286753704833),
        revenues=(3.242606907815, 1.082963951086, 0.4971833358794),
        p_mono=9.79665461573,
        shares_mono=(0.4221433821743, 0.1170785438488, 0.05247542813514, 0.4083026458417),
        v_nash=(9.457434597235, 8.714845336417, 8.058790490219),
        v_mono=(9.166745836321, 7.884245836321, 7.081745836321),
    ),
    0.8: dict(
        p_nash=(5.611259968344, 2.581323396378, 2.120790826849),
        shares=(0.6435738120702, 0.2252036289578, 0.05695555889794, 0.07426700007404),
        revenues=(3.611259968344, 0.581323396378, 0.1207908268488),
        p_mono=7.932204500417,
        shares_mono=(0.6846236130935, 0.0526606879149, 0.01057898215649, 0.2521367168351),
        v_nash=(12.97377576037, 11.92374404635, 10.54901033112),
        v_mono=(12.79114730139, 10.22614730139, 8.621147301389),
    ),
}

PRINTED = {
    0.2: dict(
        p_nash=(11.461, 9.912, 9.298),
        phi_1=0.302,
        w_1=3.461,
        shares=(0.302, 0.193, 0.134),
        revenues=(3.461, 1.912, 1.298),
        p_mono=15.498,
        v_nash_best=2.831,
        v_mono_best=2.395,
    ),
    0.4: dict(
        p_nash=(9.269, 7.509, 6.900),
        phi_1=0.352,
        w_1=3.269,
        shares=(0.352, 0.201, 0.130),
        revenues=(3.269, 1.509, 0.900),
        p_mono=12.523,
        v_nash_best=6.097,
        v_mono_best=5.721,
    ),
    0.6: dict(
        p_nash=(7.243, 5.082, 4.498),
        phi_1=0.448,
        w_1=3.243,
        shares=(0.448, 0.213, 0.111),
        revenues=(3.243, 1.082, 0.498),
        p_mono=9.798,
        v_nash_best=9.458,
        v_mono_best=9.167,
    ),
    0.8: dict(
        p_nash=(5.612, 2.581, 2.121),
        phi_1=0.644,
        w_1=3.613,
        shares=(0.644, 0.225, 0.057),
        revenues=(3.613, 0.581, 0.121),
        p_mono=7.934,
        v_nash_best=12.974,
        v_mono_best=12.791,
    ),
}
