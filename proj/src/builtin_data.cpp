#include "vrc/builtin_data.hpp"

namespace vrc::builtin {

std::string_view qie_synonyms() {
    static const std::string_view text = R"__VRC__(# Surface word -> canonical ontology token, one mapping per line.
# Matching is case-insensitive and whole-word; multi-word surfaces allowed.
scarlet=red
crimson=red
ruby=red
red-colored=red
emerald=green
jade=green
green-colored=green
azure=blue
cobalt=blue
sapphire=blue
blue-colored=blue
golden=yellow
amber=yellow
yellow-colored=yellow
grey=gray
ashen=gray
gray-colored=gray
forward=front
front-facing=front
forward-facing=front
side-facing=side
sideways=side
lateral=side
ball=sphere
box=cube
circle=round
diamond=lozenge
rhombus=lozenge
trapezoid=trapezoidal
star=pentagram
oblong=rectangle
)__VRC__";
    return text;
}

std::string_view qie_categories() {
    static const std::string_view text = R"__VRC__(# Surface word -> coarse category name.
letter=letter
letters=letter
character=letter
characters=letter
number=number
numbers=number
digit=number
digits=number
3d object=3D object
3d objects=3D object
3d shape=3D object
3d shapes=3D object
solid=3D object
solids=3D object
2d shape=2D shape
2d shapes=2D shape
flat shape=2D shape
figure=2D shape
figures=2D shape
)__VRC__";
    return text;
}

std::string_view qie_relations() {
    static const std::string_view text = R"__VRC__(# Spatial phrase -> relation token, optionally ",strict" when the phrase
# demands axis alignment ("directly ..."). Negated phrases map to the
# flipped predicate. Longest match at the earliest text position wins.
directly below=below,strict
immediately below=below,strict
directly under=below,strict
directly beneath=below,strict
directly above=above,strict
immediately above=above,strict
directly over=above,strict
directly to the left of=left_of,strict
directly left of=left_of,strict
immediately to the left of=left_of,strict
directly to the right of=right_of,strict
directly right of=right_of,strict
immediately to the right of=right_of,strict
not to the right of=left_of
not right of=left_of
not to the left of=right_of
not left of=right_of
not above=below
not over=below
not below=above
not under=above
not beneath=above
to the left of=left_of
on the left side of=left_of
on the left of=left_of
left of=left_of
to the right of=right_of
on the right side of=right_of
on the right of=right_of
right of=right_of
on top of=above
atop=above
above=above
over=above
below=below
under=below
underneath=below
beneath=below
)__VRC__";
    return text;
}

std::string_view qie_comparators() {
    static const std::string_view text = R"__VRC__(# Comparative phrase -> comparator token.
largest=largest
larger=largest
biggest=largest
bigger=largest
smallest=smallest
smaller=smallest
tiniest=smallest
littlest=smallest
leftmost=leftmost
left-most=leftmost
furthest left=leftmost
rightmost=rightmost
right-most=rightmost
furthest right=rightmost
topmost=topmost
top-most=topmost
highest=topmost
uppermost=topmost
bottommost=bottommost
bottom-most=bottommost
lowest=bottommost
)__VRC__";
    return text;
}

std::string_view qie_constraints() {
    static const std::string_view text = R"__VRC__(# Cross-object constraint phrase -> shared attribute (color | direction).
matches the direction of=direction
matching the direction of=direction
matches the color of=color
matching the color of=color
same direction as=direction
same color as=color
shares direction with=direction
shares a direction with=direction
shares color with=color
shares a color with=color
that has the same color as=color
that has the same direction as=direction
)__VRC__";
    return text;
}

std::string_view prompt_spatial() {
    static const std::string_view text = R"__VRC__(You are a 3D reasoning captcha assistant. You will first receive the question of the captcha, then the captcha image, and the output produced by the visual model (which may contain errors).

Important: This is a question involving relative positional relations. Think carefully about the relationship between the reference object and the target object. Finally, provide the coordinates of the target object, not the coordinates of the reference object.

Examples:
- "Click the letter above the cylinder" means to click the letter, not the cylinder.
- "Click the object below 'j'" means to click the object, not the character 'j'.

Please select the answer from the candidates marked with "!maybe result".

The relation is "{relation}" and the reference is {reference}.

Candidates:
{candidates}

Question: "{question}"

Use only the described scene; do not assume unseen objects. Output exactly one coordinate in the form (x,y) in pixels. Coordinates are integer pixels with the origin at the top-left corner; x increases rightward, y increases downward.
)__VRC__";
    return text;
}

std::string_view prompt_direct() {
    static const std::string_view text = R"__VRC__(You are a 3D reasoning captcha assistant. You will first receive the question of the captcha, then the captcha image, and the output produced by the visual model (which may contain errors).

This is a direct attribute question. The target object is described by the attribute conjunction: {attributes}. Perform exact matching between the specified attributes and the candidates below, and answer with the coordinate of the unique matching object.

Candidates:
{candidates}

Question: "{question}"

Use only the described scene; do not assume unseen objects. Output exactly one coordinate in the form (x,y) in pixels. Coordinates are integer pixels with the origin at the top-left corner; x increases rightward, y increases downward.
)__VRC__";
    return text;
}

std::string_view prompt_comparative() {
    static const std::string_view text = R"__VRC__(You are a 3D reasoning captcha assistant. You will first receive the question of the captcha, then the captcha image, and the output produced by the visual model (which may contain errors).

This is a comparative question. The comparison attribute is: {comparison}. Identify the unique object among the candidates below that satisfies the comparison, and answer with its coordinate.

Candidates:
{candidates}

Question: "{question}"

Use only the described scene; do not assume unseen objects. Output exactly one coordinate in the form (x,y) in pixels. Coordinates are integer pixels with the origin at the top-left corner; x increases rightward, y increases downward.
)__VRC__";
    return text;
}

std::string_view tsr_synonyms() {
    static const std::string_view text = R"__VRC__(# Canonical attribute token -> synonym alternatives (pipe-separated).
# Every alternative must normalize back to its canonical token through the
# question parser's synonym table.
red=scarlet|crimson
green=emerald
blue=azure|cobalt
yellow=golden|amber
gray=grey|ashen
front=forward
side=sideways
sphere=ball
cube=box
round=circle
lozenge=diamond|rhombus
trapezoidal=trapezoid
pentagram=star
letter=character
number=digit
)__VRC__";
    return text;
}

std::string_view tsr_rewordings() {
    static const std::string_view text = R"__VRC__(# Rewording tables for the relation/comparative/attribute axis.
# Sections: [relations] entries are "<relation>[,strict]=alt1|alt2|...";
# [comparatives] and [attributes] entries are "word=alt1|alt2|...".
# Every alternative must stay parseable and semantics-preserving.

[relations]
below,strict=directly under|immediately below|directly beneath
above,strict=directly over|immediately above
left_of,strict=directly left of|immediately to the left of
right_of,strict=directly right of|immediately to the right of
below=not above|under|beneath
above=not below|over
left_of=not to the right of|on the left side of
right_of=not to the left of|on the right side of

[comparatives]
largest=biggest
smallest=tiniest
leftmost=furthest left
rightmost=furthest right
topmost=highest
bottommost=lowest

[attributes]
object=item
item=thing
thing=object
letter=character
number=digit
red=red-colored
green=green-colored
blue=blue-colored
yellow=yellow-colored
gray=gray-colored
click=tap
)__VRC__";
    return text;
}

std::string_view ontology_shapes() {
    static const std::string_view text = R"__VRC__(0
1
2
3
4
5
6
7
8
9
a
b
c
d
e
f
g
h
i
j
k
l
m
n
o
p
q
r
s
t
u
v
w
x
y
z
A
B
C
D
E
F
G
H
I
J
K
L
M
N
O
P
Q
R
S
T
U
V
W
X
Y
Z
sphere
cube
cone
cylinder
hexagonal prism
polyhedron
rectangular prism
slant
square pyramid
torus
triangular prism
triangular pyramid
square
parallelogram
round
rectangle
hexagon
trapezoidal
lozenge
triangle
pentagram
pentagon
)__VRC__";
    return text;
}

std::string_view ontology_colors() {
    static const std::string_view text = R"__VRC__(yellow
green
gray
blue
red
)__VRC__";
    return text;
}

std::string_view ontology_towards() {
    static const std::string_view text = R"__VRC__(front
side
)__VRC__";
    return text;
}

} // namespace vrc::builtin
