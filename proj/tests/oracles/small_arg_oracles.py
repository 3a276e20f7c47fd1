# Small-argument and special-function reference values (mpmath only).
import mpmath as mp

mp.mp.dps = 30

# delta_0 below the first zero of Y_0 is atan(J_0/Y_0) with no branch shift.
print("delta0 0.001", mp.nstr(mp.atan(mp.besselj(0, mp.mpf("0.001")) / mp.bessely(0, mp.mpf("0.001"))), 17))
print("delta5 0.01", mp.nstr(mp.atan(mp.besselj(5, mp.mpf("0.01")) / mp.bessely(5, mp.mpf("0.01"))), 17))
print("I0(1)", mp.nstr(mp.besseli(0, 1), 17))
print("K0(1)", mp.nstr(mp.besselk(0, 1), 17))
print("j11", mp.nstr(mp.besseljzero(1, 1), 17))
print("I500K500(1)*1000", mp.nstr(1000 * mp.besseli(500, 1) * mp.besselk(500, 1), 17))
print("ilg(1e-3)", mp.nstr(1 / mp.log(1000), 17))
