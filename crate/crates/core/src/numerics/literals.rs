//! Decimal literals for the transcendental constants, 1320 significant digits each.
//! Each literal is rounded to nearest, so the true value lies within one unit of the
//! last digit.

/// Euler-Mascheroni constant.
pub(crate) const GAMMA: &str = "0.577215664901532860606512090082402431042159335939923598805767234884867726777664670936947063291746749514631447249807082480960504014486542836224173997644923536253500333742937337737673942792595258247094916008735203948165670853233151776611528621199501507984793745085705740029921354786146694029604325421519058775535267331399254012967420513754139549111685102807984234877587205038431093997361372553060889331267600172479537836759271351577226102734929139407984301034177717780881549570661075010161916633401522789358679654972520362128792265559536696281763887927268013243101047650596370394739495763890657296792960100901512519595092224350140934987122824794974719564697631850667612906381105182419744486783638086174945516989279230187739107294578155431600500218284409605377243420328547836701517739439870030237033951832869000155819398804270741154222781971652301107356583396734871765049194181230004065469314299929777956930310050308630341856980323108369164002589297089098548682577736428825395492587362959613329857473930237343884707037028441292016641785024873337908056275499843459076164316710314671072237002181074504441866475913480366902553245862544222534518138791243457350136129778227828814894590986384600629316947188714958752549236649352047324364109726827616087759508809512620840454447799229915724829251625127842765965708321461029821461795";

/// pi.
pub(crate) const PI: &str = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651328230664709384460955058223172535940812848111745028410270193852110555964462294895493038196442881097566593344612847564823378678316527120190914564856692346034861045432664821339360726024914127372458700660631558817488152092096282925409171536436789259036001133053054882046652138414695194151160943305727036575959195309218611738193261179310511854807446237996274956735188575272489122793818301194912983367336244065664308602139494639522473719070217986094370277053921717629317675238467481846766940513200056812714526356082778577134275778960917363717872146844090122495343014654958537105079227968925892354201995611212902196086403441815981362977477130996051870721134999999837297804995105973173281609631859502445945534690830264252230825334468503526193118817101000313783875288658753320838142061717766914730359825349042875546873115956286388235378759375195778185778053217122680661300192787661119590921642019893809525720106548586327886593615338182796823030195203530185296899577362259941389124972177528347913151557485724245415069595082953311686172785588907509838175463746493931925506040092770167113900984882401285836160356370766010471018194295559619894676783744944825537977472684710404753464620804668425906949129331367702898915210";

/// log 2.
pub(crate) const LN2: &str = "0.693147180559945309417232121458176568075500134360255254120680009493393621969694715605863326996418687542001481020570685733685520235758130557032670751635075961930727570828371435190307038623891673471123350115364497955239120475172681574932065155524734139525882950453007095326366642654104239157814952043740430385500801944170641671518644712839968171784546957026271631064546150257207402481637773389638550695260668341137273873722928956493547025762652098859693201965058554764703306793654432547632744951250406069438147104689946506220167720424524529612687946546193165174681392672504103802546259656869144192871608293803172714367782654877566485085674077648451464439940461422603193096735402574446070308096085047486638523138181676751438667476647890881437141985494231519973548803751658612753529166100071053558249879414729509293113897155998205654392871700072180857610252368892132449713893203784393530887748259701715591070882368362758984258918535302436342143670611892367891923723146723217205340164925687274778234453534764811494186423867767744060695626573796008670762571991847340226514628379048830620330611446300737194890027436439650025809365194430411911506080948793067865158870900605203468429736193841289652556539686022194122924207574321757489097706752687115817051137009158942665478595964890653058460258668382940022833005382074005677053047";

/// log 10.
pub(crate) const LN10: &str = "2.30258509299404568401799145468436420760110148862877297603332790096757260967735248023599720508959829834196778404228624863340952546508280675666628736909878168948290720832555468084379989482623319852839350530896537773262884616336622228769821988674654366747440424327436515504893431493939147961940440022210510171417480036880840126470806855677432162283552201148046637156591213734507478569476834636167921018064450706480002775026849167465505868569356734206705811364292245544057589257242082413146956890167589402567763113569192920333765871416602301057030896345720754403708474699401682692828084811842893148485249486448719278096762712757753970276686059524967166741834857044225071979650047149510504922147765676369386629769795221107182645497347726624257094293225827985025855097852653832076067263171643095059950878075237103331011978575473315414218084275438635917781170543098274823850456480190956102992918243182375253577097505395651876975103749708886921802051893395072385392051446341972652872869651108625714921988499787488737713456862091670584980782805975119385444500997813114691593466624107184669231010759843831919129223079250374729865092900988039194170265441681633572755570315159611356484654619089704281976336583698371632898217440736600916217785054177927636773114504178213766011101073104239783252189489881759792179866639431952393685592";

/// log 2.51.
pub(crate) const LN_2_51: &str = "0.920282753143692518182602329639524826077142638326191983569037675499296187923500774617468297134773867933568941035046273832117349076742860313933252883641978128708291932899282462679005794221713482551804395614169293981025326447381763407048343139890854751214255604334276053309492317417057907961145596314040781436259727470273350544653827338376703795497714599471086579239344035945159322308120929921944937167134317077997284015747329593829525376519380882998660901374871220537418654025521328068430050615160953169461480448523631641255832414041238528486999329886734728028571390467475651651337745553315219533601173311147252395379216556091133675986803829436851622427383828828293832248602885773782245858667562768901660083421118099294547546511910541139254793311807564362400368691380629281297890254721777860456734745242212675044025088292566157583465216755053763868839572709119405582675780490987407073045882723839004928106564839031942373855773583372275452074637951585091999077731531710348369406237212024539443919766618152939784235766968435422631459220956035569196110940011852951546284900848436257930164650553487841926442036720574103582999858659340293476933584208014057013553850530051253214982570111607170764449304676849990695900625021525050769378656909696402325505791494275714802340825649768776455821425046522361863324987686929688633467656";

/// Meissel-Mertens constant (limit of sum 1/p - log log x).
pub(crate) const MERTENS: &str = "0.261497212847642783755426838608695859051566648261199206192064213924924510897368209714142631434246651051617728876486021997783390324270044424543487401972386406661949557093925817127747742119852588072662720641444642325900235431051772321739256632299803147638316237581490592903822847582659723634220159714587854469415868254605389180070317877141566806205706052576017853343989703545079345309719535117168885980199553469471428836735371179106193425226169751019111595372445996052035580517805742372013329999617696769113869096541862490974359162948622385553898982419548579377382586465822125062603800843700675413792190206267607096335359819897830107624177925119616193553613916840029332805222891851672382588379304430671003912549857614185360204004574603118256704234384565519832022004778247469546067154547775721713380725954636483196872798594273067873065096694545875059425935470688464084256660088330350293665145253287133396091726393685438862912882004476116987484415934599202362250933150017294746009119781708423836590926655077466157375302828912654656715709003988827489865692103390355680509325915753257124508157916292959713429872151926157933214548926853705763596531789357048912816125564306446558087819502055252719055285417399685760923808590023976568377984636129117533525722093335828965965492386107732605572727322595674081164982247066480849883413";
