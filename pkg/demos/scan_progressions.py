"""Search for progressions a n + b where S_t vanishes mod m."""
from overschur.claims import known_progressions
from overschur.verify import scan

for t, amax, mods in ((3, 12, [4, 8, 16]), (9, 6, [4, 6, 8]), (5, 10, [4, 8])):
    print(f"t={t}, a<={amax}, m in {mods}")
    for c in scan(t, amax, mods, 200, known=known_progressions(t)):
        print(f"   S{t}({c.a}n+{c.b}) = 0 mod {c.m}   {'known' if c.known else 'candidate'}")
