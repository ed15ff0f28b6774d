//! Decimal expansions of the built-in constants.
//!
//! Digits are truncated, not rounded: the true value lies in
//! `[literal, literal + 10^-digits]`.

/// pi, truncated to 1030 fractional digits.
pub const PI_DIGITS: &str = "3.\
1415926535897932384626433832795028841971693993751058209749445923\
0781640628620899862803482534211706798214808651328230664709384460\
9550582231725359408128481117450284102701938521105559644622948954\
9303819644288109756659334461284756482337867831652712019091456485\
6692346034861045432664821339360726024914127372458700660631558817\
4881520920962829254091715364367892590360011330530548820466521384\
1469519415116094330572703657595919530921861173819326117931051185\
4807446237996274956735188575272489122793818301194912983367336244\
0656643086021394946395224737190702179860943702770539217176293176\
7523846748184676694051320005681271452635608277857713427577896091\
7363717872146844090122495343014654958537105079227968925892354201\
9956112129021960864034418159813629774771309960518707211349999998\
3729780499510597317328160963185950244594553469083026425223082533\
4468503526193118817101000313783875288658753320838142061717766914\
7303598253490428755468731159562863882353787593751957781857780532\
1712268066130019278766111959092164201989380952572010654858632788\
659361";

/// e, truncated to 1030 fractional digits.
pub const E_DIGITS: &str = "2.\
7182818284590452353602874713526624977572470936999595749669676277\
2407663035354759457138217852516642742746639193200305992181741359\
6629043572900334295260595630738132328627943490763233829880753195\
2510190115738341879307021540891499348841675092447614606680822648\
0016847741185374234544243710753907774499206955170276183860626133\
1384583000752044933826560297606737113200709328709127443747047230\
6969772093101416928368190255151086574637721112523897844250569536\
9677078544996996794686445490598793163688923009879312773617821542\
4999229576351482208269895193668033182528869398496465105820939239\
8294887933203625094431173012381970684161403970198376793206832823\
7646480429531180232878250981945581530175671736133206981125099618\
1881593041690351598888519345807273866738589422879228499892086805\
8257492796104841984443634632449684875602336248270419786232090021\
6099023530436994184914631409343173814364054625315209618369088870\
7016768396424378140592714563549061303107208510383750510115747704\
1718986106873969655212671546889570350354021234078498193343210681\
701210";
