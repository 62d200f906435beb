"""Curated registry of misprints in the transcribed source formulas.

The catalog stores every chart and reference Hamiltonian exactly as
printed in the source text; this module records the discrepancies those
transcriptions carry, each with the verbatim printed fragment, the
verifier that flags it, and (when decidable) the corrected reading.
``CORRECTIONS`` maps catalog coordinates to corrected expressions; the
corrected charts pass the canonical-commutation and round-trip checks
exactly, h-terms included, which is the evidence for each reading.

``detection`` uses coordinates ``canonical:forward``,
``canonical:backward`` and ``roundtrip`` so the verifier can match an
observed failure to the entry that explains it.
"""

from .catalog import ErratumEntry

#: (system, transformation index, direction, variable) -> corrected expression.
#: Variables are named by canonical slot (q1,p1,q2,p2); a ``backward``
#: entry corrects the image of the corresponding new variable (x1,y1,x2,y2).
CORRECTIONS = {
    ("G1112", 3, "forward", "p1"): "eta*(1/x1)^2*(x2-1) + a1*(1/x1) + y1",
    ("G1112", 3, "backward", "p1"): "-eta*(1/q1)^2*(q2-1) - a1*(1/q1) + p1",
    ("G1112", 5, "backward", "p2"): "p2 - (t1/t2)*p1",
    ("G113", 4, "backward", "q1"):
        "-q1*p1^2 - q2*p1*p2 + 2*p1^3 + 4*p1^2*p2 + 2*p1*p2^2"
        " - 2*t1*p1^2 - 2*t2*p1*p2 + a4*p1",
    ("G113", 4, "backward", "p1"): "1/p1",
    ("G122", 1, "forward", "p1"): "-x1^2*y1 - a1*x1",
    ("G122", 1, "backward", "p1"): "-q1^2*p1 - a1*q1",
    ("G122", 2, "backward", "p1"): "-q1^2*p1 - a2*q1 - q1^2*p2 + q1^2",
    ("G122", 4, "backward", "p1"):
        "2*(q2/q1)*p2 + t1*(1/q1)^2 - 2*a4*(1/q1) + p1 - (t2/t1)*p2",
    ("G14", 3, "forward", "p1"):
        "-x1^2*y1 + 2*x1*x2*y2 - (1/x1)^2*y2 + 2*(1/x1)^2 - a3*x1"
        " + ((t1-t2)/2)*y2 + t1",
    ("G14", 3, "backward", "p1"):
        "2*q1^4 - q1^2*p1 - 3*q1^2*p2 + 2*q1*q2*p2 + t1*q1^2 - a3*q1"
        " - ((t1-t2)/2)*p2",
    ("G23", 3, "forward", "p2"):
        "eta*t1*x1*(1/x2)^2 - eta*t1*t2*(1/x2)^2 + a2*(1/x2) + y2",
    ("G23", 4, "forward", "p2"):
        "-eta*t1*t2*(x1/x2)^2 + eta*t1*x1*(1/x2)^2 + x1*y2 + a2*(x1/x2)",
    ("G23", 4, "backward", "q2"): "q2/q1",
    ("G23", 5, "backward", "q2"): "q2/q1",
    ("G23", 5, "backward", "p2"): "q1*p2 + (1/2)*q1",
    ("G23", 6, "forward", "p2"):
        "-x2^2*y2 - x1*x2*y1 - (1+a1-a2+2*a3)*x2 - 1/2",
    ("G5", 3, "backward", "p1"):
        "2*q1*q2^4 - 6*q1^2*q2^2 + 2*q1^3 - q1^2*p1 - q1*q2*p2"
        " - 2*t2*q1^2 - 2*t1*q1*q2 - (a1-2*a2)*q1",
}

ENTRIES = [
    ErratumEntry(
        system="G1112",
        location="r3 backward y1",
        printed=r"y_{1}=\eta (\dfrac{1}{q_{1}})^2(q_{2}+1)+\alpha_{1}\dfrac{1}{q_{1}}+p_{1}",
        nature="sign of the q2 term: the forward map forces eta*q1^-2*(1-q2)",
        detection="canonical:backward roundtrip",
        corrected=CORRECTIONS[("G1112", 3, "backward", "p1")],
    ),
    ErratumEntry(
        system="G1112",
        location="r3 forward p1 and backward y1",
        printed=r"p_{1}=\eta (\dfrac{1}{x_{1}})^2(x_{2}-1)-\alpha_{1}\dfrac{1}{x_{1}}+y_{1}",
        nature="sign of the a1 term: the chart is canonical with either sign, but only"
               " +a1 forward (hence -a1 backward) derives the source Hamiltonians, whose"
               " every a1-dependent coefficient otherwise comes out with a1 negated;"
               " a1 occurs in no other chart of this system",
        detection="reference",
        corrected=CORRECTIONS[("G1112", 3, "forward", "p1")],
    ),
    ErratumEntry(
        system="G1112",
        location="r5 backward y2",
        printed=r"y_{2}=-\dfrac{t_{1}}{t_{2}}{p_{2}}+p_{2}",
        nature="the subtracted momentum must be p1, as in the analogous chart of G11111 r6",
        detection="canonical:backward roundtrip",
        corrected=CORRECTIONS[("G1112", 5, "backward", "p2")],
    ),
    ErratumEntry(
        system="G113",
        location="r4 backward x1 and y1",
        printed=r"y_{1}=2t_{1}p_{1}^2-2t_{2}p_{1}p_{2}+\alpha_{4}p_{1}+\dfrac{1}{p_{1}}",
        nature="the tail of the x1 image is printed on the y1 line (with a sign slip on"
               " the t1 term); the forward map forces y1 = 1/p1 exactly",
        detection="canonical:backward roundtrip",
        corrected=CORRECTIONS[("G113", 4, "backward", "q1")],
    ),
    ErratumEntry(
        system="G122",
        location="r1 forward p1 / backward y1",
        printed=r"p_{1}=-x_{1}y_{1}^2-\alpha_{1}x_{1}",
        nature="squared variable swapped; the canonical pattern (as in G14 r1) is -x1^2*y1 - a1*x1",
        detection="canonical:forward canonical:backward roundtrip",
        corrected=CORRECTIONS[("G122", 1, "forward", "p1")],
    ),
    ErratumEntry(
        system="G122",
        location="r2 backward y1",
        printed=r"y_{1}=-{q_1}^2p_{1}-\alpha_{2}q_{1}-p_{2}+1",
        nature="the trailing -p2+1 lacks the q1^2 factor the forward map requires",
        detection="canonical:backward roundtrip",
        corrected=CORRECTIONS[("G122", 2, "backward", "p1")],
    ),
    ErratumEntry(
        system="G122",
        location="r4 backward y1",
        printed=r"y_{1}=-2\dfrac{q_{2}}{q_{1}}p_{2}+t_{1}(\dfrac{1}{q_{1}})^2-2\alpha_{4}\dfrac{1}{q_{1}}+p_{1}-\dfrac{t_{2}}{t_{1}}p_{2}",
        nature="sign of the (q2/q1)*p2 term",
        detection="canonical:backward roundtrip",
        corrected=CORRECTIONS[("G122", 4, "backward", "p1")],
    ),
    ErratumEntry(
        system="G14",
        location="r3 forward p1",
        printed=r"-\dfrac{t_{1}-t_{2}}{2}y_{2}",
        nature="sign of the (t1-t2)/2*y2 term; as printed the images violate [p1, q2] = 0",
        detection="canonical:forward roundtrip",
        corrected=CORRECTIONS[("G14", 3, "forward", "p1")],
    ),
    ErratumEntry(
        system="G14",
        location="r3 backward y1",
        printed=r"y_{1}=2q_{1}^4-q_{1}^2p_{1}-3q_{1}^2p_{2}+2q_{1}q_{2}p_{2}+t_{1}q_{1}^2-\alpha_{3}x_{1}+\dfrac{t_{1}-t_{2}}{2}p_{2}",
        nature="the a3 term is written in the new variable x1 (it means -a3*q1), and the"
               " trailing (t1-t2)/2*p2 term has the wrong sign",
        detection="canonical:backward roundtrip",
        corrected=CORRECTIONS[("G14", 3, "backward", "p1")],
    ),
    ErratumEntry(
        system="G23",
        location="r3 forward p2",
        printed=r"p_{2}=\eta t_{1} (\dfrac{1}{x_{2}})^2-\eta t_{1}t_{2}(\dfrac{1}{x_{2}})^2+\alpha_{2}\dfrac{1}{x_{2}}+y_{2}",
        nature="the first eta term is missing the factor x1: the printed backward y2"
               " carries it, and [p1, p2] = 0 requires it on the forward side too",
        detection="canonical:forward roundtrip",
        corrected=CORRECTIONS[("G23", 3, "forward", "p2")],
    ),
    ErratumEntry(
        system="G23",
        location="r4 backward x2",
        printed=r"x_{2}=q_{2}",
        nature="the forward q2 = x2/x1 forces x2 = q2/q1",
        detection="canonical:backward roundtrip",
        corrected=CORRECTIONS[("G23", 4, "backward", "q2")],
    ),
    ErratumEntry(
        system="G23",
        location="r4 forward p2",
        printed=r"p_{2}=-\eta t_{1} (\dfrac{x_{1}}{x_{2}})^2+\eta t_{1}x_{1}(\dfrac{1}{x_{2}})^2+x_{1}y_{2}+\alpha_{2}\dfrac{x_{1}}{x_{2}}",
        nature="the first eta term lacks its t2 factor: inverting the printed backward"
               " (which is internally consistent with the printed forward p1) forces"
               " -eta*t1*t2*(x1/x2)^2",
        detection="roundtrip",
        corrected=CORRECTIONS[("G23", 4, "forward", "p2")],
    ),
    ErratumEntry(
        system="G23",
        location="r5 backward x2",
        printed=r"x_{2}=\dfrac{q_{1}}{q_{2}}",
        nature="inverted fraction: the forward q2 = x2/x1 forces x2 = q2/q1",
        detection="canonical:backward roundtrip",
        corrected=CORRECTIONS[("G23", 5, "backward", "q2")],
    ),
    ErratumEntry(
        system="G23",
        location="r5 backward y2",
        printed=r"y_{2}=q_{1}p_{2}-\dfrac{1}{2}",
        nature="the constant -1/2 must be +(1/2)*q1 to invert p2 = x1*y2 - 1/2",
        detection="canonical:backward roundtrip",
        corrected=CORRECTIONS[("G23", 5, "backward", "p2")],
    ),
    ErratumEntry(
        system="G23",
        location="r6 forward p2",
        printed=r"p_{2}=-x_{1}x_{2}^2y_{2}-x_{1}x_{2}y_{1}-(1+\alpha_{1}-\alpha_{2}+2\alpha_{3})x_{2}-\dfrac{1}{2}",
        nature="the first term carries a spurious x1 factor; [q2, p2] = h requires -x2^2*y2,"
               " matching the printed backward y2",
        detection="canonical:forward roundtrip",
        corrected=CORRECTIONS[("G23", 6, "forward", "p2")],
    ),
    ErratumEntry(
        system="G5",
        location="r3 backward y1",
        printed=r"y_{1}=2q_{1}q_{2}^4-6q_{1}^2q_{2}^2+2q_{1}^3-q_{1}^2p_{1}-2q_{1}q_{2}p_{2}-2t_{2}q_{1}^2-2tq_{1}q_{2}-(\alpha_{1}-2\alpha_{3})q_{1}",
        nature="three slips: the q1*q2*p2 coefficient is -1, not -2; the bare time symbol"
               " t reads t1 (the t2 reading fails the round trip); the parameter is a2"
               " (a3 does not occur in this system), matching the forward a1-2*a2",
        detection="canonical:backward roundtrip",
        corrected=CORRECTIONS[("G5", 3, "backward", "p1")],
        variants=(
            "... - 2*t1*q1*q2 - ...",
            "... - 2*t2*q1*q2 - ...",
        ),
    ),
    # -- reference Hamiltonians (detected by the reference regression) --
    ErratumEntry(
        system="G11111",
        location="H1 q1*p1 coefficient",
        printed=r"\alpha_{4}t_{2}(t_{1}+1)",
        nature="the derivation yields a4*t2*(t1-1), matching the (t1-1) factors"
               " throughout this Hamiltonian and the t2-flow counterpart",
        detection="reference",
        corrected="a4*t2*(t1-1)",
    ),
    ErratumEntry(
        system="G11111",
        location="H2 q2*p2 coefficient",
        printed=r"\alpha_{3}t_{1}(t_{2}-t_{1})",
        nature="the derivation yields a3*t1*(t2-1), the image of the a3 part of the"
               " H1 q1*p1 coefficient under the exchange of the two pairs",
        detection="reference",
        corrected="a3*t1*(t2-1)",
    ),
    ErratumEntry(
        system="G14",
        location="H1 p1*p2 coefficient",
        printed=r"\dfrac{1}{2}(t_{1}-t_{2})p_{1}(p_{1}-p_{2})",
        nature="the cross term must enter with a plus sign, (1/2)*(t1-t2)*p1*(p1+p2),"
               " mirroring the printed H2 term (1/2)*(t1-t2)*(p1*p2+p2^2)",
        detection="reference",
        corrected="(1/2)*(t1-t2)*p1*(p1+p2)",
    ),
    ErratumEntry(
        system="G23",
        location="H1 q1*p2 coefficient and missing p1^2*q2 term",
        printed=r"-\eta t_{1}2q_{1}p_{2}",
        nature="the stray factor 2 is spurious (the derivation yields -eta*t1*q1*p2),"
               " and the printed formula omits the braces term -q2*p1^2",
        detection="reference",
        corrected="-eta*t1*q1*p2 - q2*p1^2",
    ),
    ErratumEntry(
        system="G122",
        location="H1 q2*p2 coefficient",
        printed=r"+\alpha_{1}tq_{2}p_{2})",
        nature="the time symbol carries no subscript (and the closing parenthesis is"
               " stray); the catalog transcribes it as a1*t1*q2*p2, the reading the"
               " derivation reproduces exactly, while the t2 reading does not",
        detection="reference",
        corrected="a1*t1*q2*p2",
        variants=("a1*t1*q2*p2", "a1*t2*q2*p2"),
    ),
    ErratumEntry(
        system="G122",
        location="H2 all terms",
        printed=r"\dfrac{1}{(2h+\alpha_{1}+\alpha_{2}+\alpha_{3}+2\alpha_{4})t_{1}(t_{1}-t_{2})}"
                r" ; +t_{1}q_{1}^2p_{1}p_{2}",
        nature="two slips: the prefactor factor t1 reads t2 (as in the trailing braces"
               " term t2*(t1-t2)*p2, which only then yields the momentum term t2*p2),"
               " and the braces term t1*q1^2*p1*p2 reads t1*q2^2*p1*p2, the image of"
               " the H1 term -t1*q2^2*p1*p2 under the exchange of the two pairs;"
               " the prefactor slip shifts every printed coefficient",
        detection="reference",
        corrected="1/((2*h+a1+a2+a3+2*a4)*t2*(t1-t2)) ; t1*q2^2*p1*p2",
    ),
    # -- worked-example pole coefficient (detected by the calibration check) --
    ErratumEntry(
        system="G11111",
        location="derivation example, r1 pole coefficient at x1^-1*x2^2*y2",
        printed=r"k_{0,2,1,0}-k_{1,1,1,0}+(h-\alpha_{1})k_{1,2,1,1}-2(h-\alpha_{1})k_{2,1,2,0}",
        nature="the subscripts are garbled: the computed coefficient is"
               " k[0,0,2,1] - k[1,1,1,0] + (h-a1)*k[1,1,2,1] - 2*(h-a1)*k[2,2,1,0];"
               " e.g. the printed k_{0,2,1,0} multiplies p1^2*q2, whose r1 image"
               " has no pole at x1^-1*x2^2*y2 at all",
        detection="calibration",
        corrected="k[0,0,2,1] - k[1,1,1,0] + (h-a1)*k[1,1,2,1] - 2*(h-a1)*k[2,2,1,0]",
    ),
]
