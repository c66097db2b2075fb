#!/usr/bin/env python3
"""Build the English lexicon data file used to reject nonsense tokens.

The sandbox ships no system wordlist, so the lexicon is generated from
hand-curated stem lists expanded with regular inflections. Over-generated
forms are acceptable: the file is a rejection filter, so a rare non-word
entry only makes the filter stricter. Run from the repo root:

    python3 tools/build_lexicon.py
"""

from __future__ import annotations

import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "capt" / "data" / "lexicon_en.txt"

VOWELS = "aeiou"

# Words kept exactly as written (function words, irregular forms, misc).
FIXED = """
the be to of and a in that have i it for not on with he as you do at this but
his by from they we say her she or an will my one all would there their what
so up out if about who get which go me when make can like time no just him
know take people into year your good some could them see other than then now
look only come its over think also back after use two how our work first well
way even new want because any these give day most us is are was were been
being am has had having does did done doing says said goes went gone gets got
gotten makes made knows knew known thinks thought takes took taken sees saw
seen comes came tells told finds found gives gave given feels felt becomes
became leaves left puts means meant keeps kept lets begins began begun seems
shows showed shown hears heard plays ran runs holds held brings brought
happens writes wrote written sits sat stands stood loses lost pays paid meets
met sets learns learned learnt leads led understands understood speaks spoke
spoken reads spends spent grows grew grown wins won buys bought waits dies
sends sent builds built stays falls fell fallen cuts reaches kills remains
suggests raises passes sells sold requires reports decides pulls breaks broke
broken teaches taught eats ate eaten flies flew flown forgets forgot forgotten
chooses chose chosen draws drew drawn drinks drank drunk drives drove driven
fights fought hides hid hidden hits hurt hurts catches caught feeds fed
freezes froze frozen hangs hung lays laid lies lay lain lights lit rides rode
ridden rings rang rung rises rose risen shakes shook shaken shines shone
shoots shot sings sang sung sinks sank sunk sleeps slept slides slid steals
stole stolen sticks stuck strikes struck swears swore sworn sweeps swept
swims swam swum swings swung throws threw thrown wakes woke woken wears wore
worn binds bound bleeds bled blows blew blown burns burnt bursts costs creeps
crept deals dealt digs dug dreams dreamt feeds fled flees forbids forbade
forbidden forgives forgave forgiven grinds ground kneels knelt knits leans
leant leaps leapt lends lent pleads pled proves proved proven quits rids
seeks sought sews sewn shears shorn sheds shrinks shrank shrunk shuts sows
sown spells spelt spins spun spits spat splits spreads springs sprang sprung
stings stung stinks stank strides strode strings strung strives strove
striven swells swollen tears tore torn treads trod weaves wove woven weeps
wept wets winds wound withdraws withdrew withdrawn wrings wrung
man men woman women child children person foot feet tooth teeth mouse mice
goose geese ox oxen die dice leaf leaves loaf loaves knife knives wife wives
life lives half halves shelf shelves wolf wolves calf calves thief thieves
self selves scarf scarves sheep deer fish species series means aircraft
criteria criterion data datum phenomena phenomenon analysis analyses basis
bases crisis crises thesis theses oasis oases cactus cacti fungus fungi
nucleus nuclei stimulus stimuli syllabus alumni alumnus medium media
curriculum curricula memorandum bacteria bacterium larva larvae vertebra
vertebrae index indices appendix appendices matrix matrices axis axes
i me my mine myself you your yours yourself yourselves he him his himself
she her hers herself it its itself we us our ours ourselves they them their
theirs themselves this that these those who whom whose which what where when
why how whether while although though because since until unless if then else
than as of at by for with about against between among through during before
after above below under over again further once here there all any both each
few more most other some such no nor not only own same so too very just ever
never always often sometimes usually rarely seldom already yet still almost
quite rather really perhaps maybe indeed however therefore moreover otherwise
meanwhile instead anyway besides hence thus namely regarding concerning
despite within without toward towards upon onto into out off down up near
far away back forth across along around behind beside beyond inside outside
underneath throughout amid amongst per versus via according
can could may might must shall should will would need dare ought
yes no okay please thanks hello goodbye sorry welcome
zero one two three four five six seven eight nine ten eleven twelve thirteen
fourteen fifteen sixteen seventeen eighteen nineteen twenty thirty forty
fifty sixty seventy eighty ninety hundred thousand million billion trillion
first second third fourth fifth sixth seventh eighth ninth tenth eleventh
twelfth twentieth thirtieth fortieth fiftieth hundredth thousandth
monday tuesday wednesday thursday friday saturday sunday january february
march april may june july august september october november december spring
summer autumn winter today tomorrow yesterday tonight noon midnight
north south east west northern southern eastern western upper lower inner
outer central middle
red orange yellow green blue purple violet pink brown black white gray grey
golden silver crimson scarlet turquoise beige maroon navy olive teal
"""

# Regular nouns: expanded with a plural.
NOUN_WORDS = """
time year way day thing world school state family student group country
problem hand part place case week company system program question work
government number night point home water room mother area money story fact
month lot right study book eye job word business issue side kind head house
service friend father power hour game line end member law car city community
name president team minute idea body information parent face level office
door health art war history party result change morning reason girl guy
moment air teacher force education research boy age policy process music
market sense nation plan college interest death experience effect road form
action model season society tax director position player record paper space
ground couple figure street image phone account oil situation station baby
class industry skin lesson computer field test boat bird dog cat horse cow
pig chicken duck rabbit lion tiger bear elephant monkey snake frog turtle
shark whale dolphin seal crab shrimp insect spider ant bee wasp moth beetle
worm snail fox goat lamb donkey camel squirrel hamster parrot pigeon eagle
hawk owl swan crow raven robin sparrow finch wren falcon heron stork crane
penguin ostrich peacock rooster hen turkey goose? gecko lizard iguana cobra
python viper toad newt salamander trout salmon? tuna cod herring sardine
mackerel perch bass carp minnow tadpole jellyfish starfish octopus squid
clam oyster mussel lobster barnacle plankton coral sponge anemone urchin
apple banana orange grape lemon lime peach pear plum cherry berry melon
mango papaya kiwi coconut pineapple apricot fig date raisin prune currant
tomato potato carrot onion garlic pepper cucumber lettuce spinach cabbage
broccoli celery radish turnip beet pea bean corn rice wheat oat barley rye
bread butter cheese cream milk egg meat beef pork bacon sausage ham steak
soup salad sauce spice sugar salt honey jam cake cookie pie pastry candy
chocolate tea juice soda wine beer drink meal breakfast lunch dinner supper
snack dessert recipe kitchen oven stove pan pot plate bowl cup glass fork
spoon knife? napkin table chair desk bed sofa couch lamp rug carpet curtain
window wall floor ceiling roof stair door? garage garden yard fence gate
porch balcony attic basement closet drawer shelf? mirror clock picture
painting photo frame vase candle pillow blanket sheet towel soap shampoo
brush comb razor toothbrush toothpaste bucket mop broom sponge? vacuum
hammer nail screw screwdriver wrench pliers saw drill ladder rope chain
wire tape glue scissors needle thread button zipper pocket sleeve collar
shirt pant dress skirt coat jacket sweater vest suit tie belt sock shoe
boot sandal slipper hat cap scarf? glove mitten umbrella purse wallet bag
backpack suitcase luggage ticket passport map compass tent sleeping?
campfire trail mountain hill valley cliff cave canyon desert forest jungle
meadow prairie swamp marsh pond lake river stream creek waterfall ocean
sea beach shore coast island peninsula volcano glacier iceberg earthquake
storm rain snow hail sleet fog mist cloud wind breeze gust thunder
lightning rainbow sunrise sunset horizon star planet moon sun comet
asteroid galaxy universe orbit rocket satellite telescope microscope
magnet battery circuit switch button? screen keyboard mouse? printer
camera speaker headphone microphone radio television remote channel
signal network internet website email message letter envelope stamp
package parcel mailbox post office? bank coin dollar cent price cost
value profit loss? budget salary wage income expense debt loan credit
card cash check receipt invoice contract deal agreement promise secret
truth lie? rumor news report article magazine newspaper journal diary
novel poem poetry author writer reader library bookstore chapter page
paragraph sentence phrase verb noun adjective adverb pronoun grammar
language dialect accent voice sound noise silence echo rhythm melody
harmony tune song singer band orchestra concert stage audience actor
actress director? producer scene script costume makeup camera? film
movie theater cinema show performance dance ballet opera drama comedy
tragedy plot character hero villain victim witness judge jury lawyer
court trial verdict sentence? prison jail guard police officer detective
crime theft robbery murder? clue evidence proof fingerprint suspect
arrest charge fine penalty rule regulation permit license badge uniform
soldier army navy? marine pilot captain colonel general sergeant troop
battle weapon sword shield armor arrow bow? cannon bullet bomb missile
tank submarine helicopter airplane jet glider parachute airport runway
pilot? passenger crew flight journey trip voyage cruise tour vacation
holiday festival carnival parade ceremony wedding funeral birthday
anniversary gift present surprise party? balloon ribbon decoration
invitation guest host neighbor stranger crowd queue line? row column
corner edge center? circle square triangle rectangle oval sphere cube
cylinder cone pyramid angle curve spiral pattern stripe dot spot mark
stain scratch crack hole gap slot groove ridge bump lump knot loop coil
spring? coilspring lever pulley gear axle wheel tire engine motor brake
pedal handle knob hinge lock key? padlock bolt latch fountain statue
monument tower bridge tunnel highway avenue boulevard lane alley
sidewalk crosswalk intersection corner? roundabout traffic vehicle truck
van bus taxi cab trailer wagon cart bicycle tricycle scooter motorcycle
train subway tram ferry barge canoe kayak raft yacht sail anchor harbor
port dock pier lighthouse buoy captain? sailor fisherman farmer rancher
shepherd gardener florist butcher baker chef cook waiter waitress
bartender cashier clerk secretary? accountant banker broker agent
salesman vendor merchant customer client consumer shopper buyer seller
trader dealer supplier contractor carpenter plumber electrician mechanic
engineer architect designer artist sculptor painter musician drummer
guitarist pianist violinist composer conductor singer? dancer athlete
runner swimmer cyclist boxer wrestler gymnast skater skier surfer golfer
pitcher catcher batter goalie referee umpire coach trainer player?
champion winner loser opponent rival teammate league tournament match
game? score goal?point? basket touchdown inning quarter? half? period
overtime playoff final medal trophy prize award ribbon?certificate
diploma degree? scholarship tuition classroom lecture seminar workshop
laboratory experiment hypothesis theory formula equation calculation
measurement unit meter liter gram ton ounce pound inch yard mile acre
gallon quart pint dozen pair couple?triple quantity amount total sum
average minimum maximum limit range scale ratio percent percentage
fraction decimal digit zero?numeral algebra geometry calculus statistics
probability chemistry physics biology geology astronomy ecology botany
zoology anatomy medicine surgery therapy treatment cure remedy vaccine
dose pill tablet capsule syrup ointment bandage cast crutch wheelchair
stretcher ambulance hospital clinic pharmacy doctor nurse surgeon
dentist therapist patient illness disease infection virus bacteria?
germ fever cough sneeze headache stomachache toothache allergy rash
bruise wound injury fracture sprain burn? blister scar symptom diagnosis
recovery health? fitness exercise workout diet nutrition vitamin protein
calcium mineral fiber calorie muscle bone joint spine skull rib limb
arm leg knee ankle heel toe finger thumb wrist elbow shoulder neck chin
cheek forehead eyebrow eyelash eyelid pupil iris? nostril lip tongue
jaw throat chest waist hip thigh shin calf? palm knuckle nail? scalp
hair beard mustache wrinkle dimple freckle mole? lung heart liver kidney
stomach intestine bladder artery vein nerve brain spinal? gland hormone
cell tissue organ organism gene chromosome embryo fetus infant toddler
teenager adult elder ancestor descendant generation cousin nephew niece
uncle aunt grandfather grandmother grandson granddaughter husband
bride groom fiance twin sibling brother sister daughter son? orphan
widow guardian tutor mentor pupil? graduate freshman senior? junior?
colleague partner? boss employer employee worker? staff crew? committee
board? council assembly parliament congress senate minister mayor
governor ambassador diplomat citizen resident immigrant refugee voter
candidate campaign election ballot poll democracy republic monarchy
empire kingdom dynasty throne crown palace castle fortress moat tower?
dungeon knight squire peasant noble duke duchess prince princess queen
king emperor empress tribe clan village town suburb district region
province territory border frontier boundary zone area? continent
hemisphere equator pole latitude longitude altitude elevation depth
width height length distance location site spot? landmark destination
route path trail? track lane? detour shortcut journey? pace speed
velocity acceleration momentum friction gravity pressure temperature
heat cold? warmth chill frost dew humidity moisture drought flood
tide wave current ripple splash spray foam bubble drop droplet puddle
ditch canal reservoir dam well? spring?fountain? geyser
"""

# More regular nouns.
NOUN_WORDS2 = """
ability absence accent accident acid activity actor address adult advance
advantage adventure advice affair agency agenda aid aim alarm album alley
ally amber ambition anchor angel anger animal ankle answer apartment appeal
appetite applause appointment arch arena argument arm army aroma arrow
aspect asset assignment assistant atmosphere atom attention attic attitude
auction audience author autumn award awe axe bacon badge balance balcony
ball ballad ballet balloon banana band banner bar barber bargain barn
barrel barrier base basement basin basket bat bath bathroom battery bay
beach bead beak beam bean beard beast beat beauty bedroom beginner being
bell belly belt bench benefit berry bet bike bill bin biography birth
biscuit bite blade blame blanket blast blaze blessing blizzard block
blossom blouse board bolt bond bonus border bottle bottom bow bowl box
brain branch brand brass bread breath breed brick bride brim brook broom
brother brow bubble bud buddy buffalo bug bulb bull bundle bunny burden
burrow bush cabin cabinet cable cafe cage calendar camel camera camp
campus canal candidate candle candy cannon canvas capital captain car
carbon card career cargo carpet carrot case castle catalog cattle cause
caution cave celebrity cell cellar cement census center century chain
chair chalk chamber chance chapel chapter charm chart chase cheek cheer
chess chest chief chimney chin chip choice choir chord chorus church
cigar circle circuit circus citizen city clam clash clasp claw clay
cliff climate climb clinic clip cloak cloth clown club clue cluster
clutch coach coal coast coat cocoa code coil coin collar college colony
column comb comet comfort comic command comment commerce committee
companion company compass concept concert concrete condition cone
conference conflict congress connection conscience consent consequence
constant contact content contest context contract contrast control
convention copper copy cord cork corn corner corps cottage cotton couch
counter county courage course court cousin crack cradle craft crate
crater crayon cream creature credit crest crew crib cricket crime crisp
critic crook crop cross crow crowd crown crumb crust crystal cube cue
cuff cult culture cup cupboard curb curl current curse curtain curve
cushion custom customer cycle dairy daisy dam damage dance danger dash
database daughter dawn deadline deal debate debut decade deck decision
deed defeat defense degree delay delight delivery demand demon den
density dentist deposit depot depth deputy descent desert design desire
desk despair detail device devil devotion diagram dial diamond diary
dust duty dwarf eagle ear earth ease easel echo eclipse economy edge
editor effect effort elbow elder element elephant elevator emblem
emergency emotion emperor empire employee end enemy energy engine
entrance entry envelope envy episode equipment era error escape essay
essence estate event evidence evil example exception excess excitement
excuse exhibit exile exit expense expert explosion export expression
extent extreme fabric factor factory failure faith falcon fame fan
fare farm fashion fate fault favor feast feather feature fee feed
feeling fellow fence festival fever fiber fiction fig fight figure
file film filter fin finance finger fire firm fish fist flag flame
flash flavor flaw fleet flesh flight flock flood floor flour flow
flower flu fluid flute foam fog foil folder folk food fool force
forecast forehead forest forge fork form fort fortune forum fossil
foundation fox fragment frame fraud freedom friction fridge frontier
frost frown fuel fun function fund funeral fur furnace furniture fury
gadget gain galaxy gallery gallon gamble gang gap garage garbage
garlic garment gas gasoline gaze gear gem gender gene genius genre
gesture ghost giant gift giggle girl glacier gland glance glass glimpse
globe glory glove glow goal gold golf gossip gown grace grade grain
gram grammar grape graph grasp grass grave gravel gravity grease
greed grief grill grin grip grocery ground growth guarantee guess
guest guilt guitar gulf gum gun gut gutter habit habitat hail hall
hallway handle harbor hardware harm harmony harp harvest haste hawk
hay hazard haze heading headline heap heart hearth heat heaven hedge
heel height heir hell helmet herb herd heritage hero hide hierarchy
highway hike hill hint hip hobby hockey hold hole homework hood hook
horizon horn horror hose host hotel household hug humor hunger hunt
hut hydrogen hymn ice icon identity image impact import impulse
incident income increase industry infant influence ingredient initial
injury inn input insect insight instance instinct institute
instruction instrument insurance intent interior interval interview
invasion inventory iron island item ivory jar jaw jazz jeans jelly
jewel job jog joint joke journal journey joy judge juice jump jungle
jury justice kettle keyboard kick kid kingdom kiss kit kite knee
knight knob knock knot lab label labor lace lack ladder lady lake
lamp land landlord landscape language lap laser laugh laundry lava
layer layout leader leaflet league leather lecture leg legend lemon
length lens leopard letter lever liberty library lid lifetime lift
limb lime limit linen link lion liquid list litter load loan lobby
lobster log logic loop lord lottery lounge luck luggage lumber lump
lunch luxury machine magazine magic magnet maid mail mainland makeup
mall mammoth manager manner mansion mantle manual marble margin
marker market marsh mask mass master mat match mate mayor meadow
meaning measure medal media melody member memo menu mercy merit
mess metal meter method metro midnight might mile milk mill mind
mine mineral miracle mirror mission mistake mixture mob mode moisture
mold mole moment monarch monument mood moon morale mosque mosquito
motel moth mother motion motive motor motto mound mount mouth mud mug
murder muscle museum mushroom mustard mystery myth nail nap napkin
narrator nation nature neck need needle nerve nest net new? niche
nickel night nightmare noble node noise nominee noodle nose notch
note notebook notice notion nut oak oar oath obstacle occasion
odds odor offense offer oil? olive onion opening opera opinion
opponent option oracle orbit order ore organ origin ornament orphan
outcome outfit outline output oven owl owner oxygen pace package
pact paddle pain pair palace palm pan panel panic pants parade
parcel park parlor part? partner passage passion pasta paste pasture
patch path patience patrol pattern pause paw peace peak peanut pearl
pedal peer pen penalty pencil penny pepper perfume peril period
permission pet petal phase phrase piano pick picnic piece pier pile
pill pillar pilot pin pine pipe pistol pit pitch pity pixel pizza
plague plan plane planet plank plant plaster plastic plate platform
plaza plea pleasure pledge plot plug plum plumber plunge pocket poem
poet poison pole police policy polish pond pony pool porch pork port
portion portrait pose post poster pot potato pouch poverty powder
power prayer precedent premise present press prestige prey pride
priest prince principle priority prison privacy privilege prize
process product profession professor profile profit progress project
promise proof property prophet proposal prospect protein protest
province pub puddle pulse pump pumpkin punch pupil puppet puppy
purchase purpose purse puzzle quarter quartz queen quest quilt quota
rack radar radio raft rage raid rail railroad rally ranch range
rank ransom rate rattle ray razor reaction rear rebel receipt
recipe record rect? reef reform refuge refusal region register
regret relation relief religion remainder remark remedy rent repair
reply republic request residence resident resort resource respect
response rest restaurant result retreat revenge revenue reverse
review reward rhythm rib rice riddle ridge rifle ring riot rise
risk ritual rival road roast robe robot rock rocket rod role roll
roof rookie rope rose route routine rubber rug ruin rumor rust
sack saddle safety saga sail saint sake salad salary sale salt
sample sanctuary sand sandal sandwich satellite sauce scale scandal
scar scarf? scene scent schedule scheme scholar science scoop scope
score scrap screen script scroll sculpture search season seat second
sector security seed segment sense sequence series? sermon session
shadow shaft shake shame shampoo shape shark shed sheet shell
shield shift shirt shock shoulder shovel shower shrine shrub sign
signature silk sill silver? sin singer sink siren site skeleton
sketch ski skill skirt sky slab slang sleeve slice slide slogan
slope slot smoke snack sneaker soap soccer society sock soda sofa
soil soldier solo solution sorrow soul soup source space spade span
spark species? specimen speech spell sphere spice spike spirit
spite splash spoon sport spouse spray spur squad square squash
stable stadium staff stain stake stall stamp stance star starch
statue status steam steel stem stick stock stomach stone stool
store storm strap strategy straw streak stream strength stress
stretch strife string strip stroke structure struggle stump style
subject suburb subway sugar suit suite summary summit sunlight
surface surgeon survey suspect swamp swarm sweat sweater symbol
symptom syrup tale talent tank target task taste tavern team tear
temper temple tempo tenant tendency tennis tent term terrace
terror text texture theft theme theory thread threat thrill
throat throne thumb thunder ticket tide tile timber tin tissue
title toast tobacco toe toll tone tool top topic torch total
tourist towel tower town toy trace track tractor trade tradition
tragedy trail trailer trait transit trap trash tray treasure
treat treaty tree trench trend trial triangle trick trio troop
trophy trouble trunk trust tube tune tunnel turf turn tutor
tweed twig twilight twin type uncle union unit universe update
upgrade urge usage user utility vacuum valley value valve vapor
vault vein velvet vendor venture venue verse version vessel
veteran victim victory video view village violin virtue vision
visit visitor vitamin voice volume vote vow voyage waist wake
walk wallet war ward warehouse warmth warning warrior wave wealth
weapon weather web wedding weed weekend weight welfare wheat whim
whisper width wilderness wind wing winner winter wire wisdom wish
wit wolf? wonder wood wool workshop worm worry worth wound wreath
wrist yacht yarn yawn zone
"""

# More regular verbs.
VERB_WORDS2 = """
abandon absorb accept access accompany accomplish accuse ache achieve
acquire act adapt adjust adopt advance? advertise affect aid? alert
align allege alter amaze amend amuse analyze anchor? anticipate
apologize? appeal? applaud? approach? arise? arm? assemble assert assess
assign associate assure astonish attain audit авторize? await awaken
backfire bang banish bank? bargain? bash bat? batter beam? beckon
befriend behold belch bellow belt? bicker bid bind? blast? bleach
bloom blot blur bob boost bore botch bother brace braid brainstorm
brand? bray breeze brew bribe bridge? brighten broadcastற? broaden
browse bruise buckle bud? budge budget? buff bundle? bungle burp
bustle butter? cackle calm?캠p? capture care caress cart? cater cave?
cease certify chant chaperone char chart? chatter chide chime chirp
christen chuckle churn cite clench click cloak? clog clutch? coast?
coax coddle coerce coincide collide commence commend commit compel
compensate compile comply compute conceal concede conceive concentrate
condemn condone confer confide configure confine confront congest
conquer conserve consider? console consolidate conspire constrain
construct contemplate contend contract? convene convert convey convict
cooperate coordinate cope correspond corrupt counsel covet cower cram
cramp crave credit? cringe cripple critique crouch cruise crumble
crunch cuddle curb? customize dab dabble dangle dart dash? dazzle
debate? decode dedicate deduce deem defeat? defer defy degrade dehydrate
delegate delete deliberate delve demolish demonstrate denounce dent
depict deplete deploy deprive derive descend designate desire? despise
detach detail? deter devastate deviate devise devote devour dictate
digest dim dine dip direct? disable discard discern discharge disclose
disconnect discourage disguise disgust dismantle dispatch dispense
disperse display dispose dispute disregard disrupt dissolve distort
distract distribute ditch dodge dot? downsize doze draft dread drench
drift drill? drip drone droop dub duck? dump dwell dye earmark ease
echo? eject elaborate elevate eliminate elude embark embed embrace
emit empower emulate enact enclose encode encounter endorse energize
enforce engineer? engrave engulf enlarge enlighten enlist enrage
enrich enroll entail entice entrust envision equip eradicate erect
erode erupt escort evacuate evade evaporate evoke evolve exaggerate
exceed excel except? excerpt? exclaim exclude execute exempt exert
exhale exhibit? expel expire explode exploit export? extract eye?
fabricate facilitate factor? falter fancy? fathom feast? feign
ferment fiddle fidget finalize finance? flank flap flare flatten
flatter flaunt flee? flick fling? flinch flip flirt flock? flop
flourish flush flutter foam? foresee? forfeit forge? formulate
foster foul fracture fret frighten frolic frown? fulfill fumble
fume furnish fuse gallop gamble? garnish gasp gauge generalize
germinate glare gleam glide glimpse? glisten glitter gloat glow?
gnaw gobble gossip? gouge graph? gratify graze grieve grill? grimace
groan groom grope grumble grunt gush halt hamper harass harden
hark harness hassle hatch haul haunt heave heed hinder hiss hoard
hobble hoist honk honor hoot hop hover howl huddle humiliate hush
hustle hypnotize idle idolize игnite? immerse impair impart impede
implement implore impose imprison improvise incline incorporate
incur indulge infect infer inflate inflict infuse inhabit inhale
inherit inhibit initiate inject injure innovate inquire inscribe
insert instill integrate intercept interfere interpret intervene
intimidate intrigue invade invoke irrigate itch jab jam jeer
jingle jolt jostle jot journey? jumble justify kindle lag lament
languish lash lasso latch lather launder lavish leak leap? leer
legalize lessen levitate liberate linger litigate litter? loathe
lodge loft? loiter loom loop? lounge? lull lumber? lure lurk
magnify mangle manipulate maneuver mar marvel mash масsage? mature?
meander meddle mediate meditate mellow memorize menace merge mimic
mingle minimize misplace mistreat moan mock modify mold? mumble
munch muse muster mutter mystify nag narrate navigate negotiate
nestle nibble nominate notify nourish nudge nurture obey oblige
obscure obsess obstruct offend omit ooze orbit? orchestrate ordain
oust outlaw outline? outpace outrun? overflow overhaul overlap
oversee? overtake? overturn overwhelm pamper pant parachute?
paralyze paraphrase parch pat patch? patrol? pave peck pedal? peek
peer? pelt penetrate perch perfect? perish perk permeate perplex
persist personalize pester petition pilot? pinpoint pioneer pivot
placate plot? pluck plummet plunder poach poise poke ponder pounce
pound prance preside prevail prick probe procure prod profess
prolong prop propel prosecute prosper provoke prowl pry publicize
puff pulverize pummel pump? puncture purify quack quake quarrel
quench quiver ramble rattle? ravage rave ready? reap reassure
rebound rebuke recede recite reckon recline recruit rectify recur
redeem refine refute regain regulate rehearse reign reinforce
reiterate rekindle relay relinquish relish remedy? reminisce
render renew renounce renovate repay repel rephrase? reproduce
repulse resemble reside resume retain retaliate retract retrieve
revamp revel reverberate revere revert revise revive revoke
revolve ridicule rig rinse ripen rippleером? rouse rove rummage
rumble rupture rustle salvage sample? sanction saturate saunter
savor scamper scavenge scoff scorch scour scowl scramble scrawl
screech scribble sculpt scurry scuttle seep seethe sever shackle
shatter shear? shed? shepherd shimmer shove shred shriek shrivel
shudder shun shuttle sift simmer singe sizzle skid skim skimp
skitter slack slake slather slay sled slick slink slither slouch
slump slur smack smear smirk smolder smother smudge smuggle snarl
snatch snicker snip snoop snooze snort snub snuggle soar sob
socialize soften solicit soothe spawn specify speckle spearhead
spellbind spew spiral splatter splinter sponsor spook sprout spurn
sputter squander squat squint squirm stabilize stack stagger stalk
stash steady? steep? stifle stigmatize stimulate stipulate stoke
stomp stoop storm? stow straddle straighten strand streamline
stride? stroke? strut stub stud stump? stun stutter subdue submerge
subscribe subside substitute suffocate summon surge surpass suspend
sustain swab swagger swat swerve swindle swirl swish swoop tabulate
taint tally tamper tangle tanned? taper tarnish taunt teem tether
thrash thrive throb thrust thump thwart tilt tinker tiptoe tolerate
topple torment tow trail? trample transcend transcribe transmit
traverse tread? trek trickle trigger trot trudge tuck tweak twirl
twitch unify unleash unravel unveil uphold uproot usher utilize
utter? validate vacate venture? vent verge vex vibrate vie vindicate
vouch wade waft wager waggle wallow waltz wane warp waver weave?
wedge weld whack wheeze whirl whisk whittle wield wiggle wilt
wince wind? wobble wow wrangle wreak wrench? wriggle yank yearn
yelp yield? zap zigzag
"""

# Regular verbs: expanded with -s, -ed, -ing forms.
VERB_WORDS = """
want use call try ask need help talk turn start show play move live believe
happen provide serve expect stay reach kill remain suggest raise pass
require report decide pull open walk offer remember love consider appear
wait die? follow stop create allow add spend? continue include watch look
seem work? change ask? charge check claim clean clear climb close collect
compare complain complete concern confirm connect contain cover cross cry
damage deliver demand deny depend describe deserve design destroy develop
disagree discover discuss divide doubt dress drop earn employ encourage
enjoy enter examine exist explain explore express face? fail fill finish
fit fix focus force? gather glance grab greet guess handle hate head?
hope hunt hurry identify imagine improve increase indicate inform intend
introduce invite join jump kick kiss knock lack land last? laugh launch
lift link list listen load lock? manage mark? marry match? matter measure
mention miss mix name? note notice obtain occur order organize owe own
pack paint? perform pick place? plan? plant point? possess pour practice
prefer prepare present? press pretend prevent print? produce promise?
protect prove? provide? publish push realize receive recognize record?
reduce refer reflect refuse regard relate release rely remind remove
repeat replace reply represent request rescue respond rest return reveal
review roll rub rule? rush save score? search seat select settle shape
share shout sign? smile sort? spell? spread? stare state? stir stretch
study? submit succeed suffer supply support suppose surround survive
tend thank tie? touch train? travel treat trust visit vote wander warn
wash waste wave? welcome? whisper wish wonder worry wrap yell admire
admit advise afford agree aim announce annoy apologize applaud apply
appoint appreciate approach approve argue arrange arrest? arrive assist
assume attach attack attempt attend attract avoid bake balance ban bark
base bathe battle? beg behave belong bend? bet blame blend bless blink
boast boil book? borrow bounce bow? brag brush? bully bump? burst? bury
buzz calculate camp cancel carry carve cause celebrate challenge chase
cheat cheer chew chop clap classify cling coach? collapse color comb?
combine comfort command comment communicate compete compose conclude
conduct confess confuse congratulate consist consult consume contact
contribute control convince copy correct cough? count crash crawl
criticize crush cure? curl cycle dance? dare? decay decorate decrease
defend define delay delight depart deposit? detect determine differ
disappear disappoint dislike dismiss disturb dive divorce dominate
donate drag drain dream? drown dry dust earn? educate elect embarrass
emerge emphasize empty enable end? endure engage enhance ensure
entertain escape establish estimate evaluate examine? exchange excite
excuse exercise? exhaust expand experiment? expose extend fade fasten
fear feature fetch flash float flood? flow fold fool forgive? gain
gaze generate govern grade graduate? grant grasp grin guard? guide
hand? hang? harm harvest heal heat? hesitate hire hug hum hurry?
ignore illustrate imitate imply import impress inspect inspire install
insist insult insure interrupt invent invest investigate involve iron
irritate isolate issue? joke judge? juggle knit? label? land? last?
lean? lecture? lick limit? locate long? maintain manufacture march?
mask? melt mend mess migrate mind? monitor mourn multiply murder?
nod object? observe occupy operate oppose overcome? overlook pardon
park? participate pause peel perceive permit? persuade phone? pinch
pity plug polish pollute pop pose possess? postpone pray preach
predict preserve pressure? pretend? proceed process? program? progress
prohibit promote pronounce propose protest punch punish purchase
pursue qualify question? quote race? rain? rank? rate? react rebuild?
recall recommend reconsider recover recycle reform refresh regret
reject rejoice relax relieve remark remind? rent repair rephrase
rescue? research? reserve resign resist resolve respect restore
restrict retire reunite reward rhyme rip risk? roam roar roast rob
rock? rot rotate ruin rush? sail? satisfy scan scare scatter scold
scoop scrape scratch? scream screw? scrub seal? secure seize sentence?
separate serve? settle? sew? shade? shampoo? shape? shave shelter
shift shiver shock shop shout? shrug sigh signal? simplify sin sip
ski? skip slam slap slice slip smash smell smoke snap sneeze? sniff
snore snow? soak solve sort? spare sparkle spill spoil spot? spray?
sprinkle squeak squeeze stamp? starve steer step stitch strain?
strengthen stress? strip stroll struggle stuff? stumble subtract
suck suffer? summarize supervise surprise? surrender suspect? swallow
sway switch? tackle tame tap taste tease tempt terrify thaw threaten
thrill tick tickle tidy tip? toast? toss trace trade? transfer
transform translate transport trap tremble trick? trim trip? trouble?
tug tumble tutor? twist type undergo? underline undo? unfold unite
unlock unpack update upgrade upset? urge vanish vary verify view?
violate volunteer wail wait? waken water? weaken weigh whine whistle
widen wink wipe witness? worship wound? wreck wrestle yawn zip zoom
"""

# Gradable adjectives: expanded with -er, -est.
ADJ_CMP_WORDS = """
new long great little old big high small large young early late hard
strong low sure clear close fine nice warm cool cold hot wet dry deep
wide tall short fast slow bright dark light? heavy soft loud quiet rich
poor clean dirty smart dumb thick thin tight loose sharp dull smooth
rough calm wild safe? tough weak fresh stale brave plain proud rude kind?
mean? neat messy busy lazy noisy shiny tiny fancy happy angry sleepy
hungry thirsty funny silly pretty ugly lucky gloomy cloudy sunny windy
rainy snowy foggy icy chilly steep flat narrow shallow cheap pale dense
faint firm fit? grand gray? green?grim handy harsh huge keen mild moist
odd pure quick raw ripe scarce shy sick simple slim sly sour stiff
strange strict sweet tame? tense vague vast weird wise brief crazy cozy
dizzy empty? gentle humble likely lively lonely lovely mighty murky
polite remote ripe? rusty scary severe sturdy subtle tidy? witty
"""

# Adjectives and adverbs included with an -ly form.
ADJ_LY_WORDS = """
quick slow loud soft careful careless quiet calm brave bold proud rude
polite gentle kind? glad eager easy? happy? angry? sad? bright? clear?
close? deep? direct exact fair final firm? fond frank free fresh? full
grave great? heavy? high? honest hopeless immediate instant intense
joint? keen? light? live? loose? mad main mere mild? narrow? natural
neat? nervous new? nice? normal obvious odd? open? original painful
patient? perfect plain? pleasant poor? possible precise previous primary
private probable prompt proper public? pure? rapid rare real recent
regular reluctant repeated rigid rough? round? royal sad scarce? secret?
secure? serious sharp? significant silent similar simple? sincere slight
smooth? soft? sole solemn specific steady strange? strict? strong? sudden
swift total tragic typical ultimate unusual urgent usual utter vague?
vain vivid voluntary warm? weak? wild? wise? wrong
"""

# Plain adjectives and remaining vocabulary (no inflection).
PLAIN_WORDS = """
able good best better important different following local social certain
national political available economic military federal entire possible?
human serious? ready difficult financial medical current international
special legal religious cultural physical environmental official major
minor common whole free? true false foreign private? public? recent?
single personal popular traditional various modern ancient familiar
favorite separate? similar? unique essential necessary obvious? afraid
alive alone asleep awake aware beautiful boring broken careful?
comfortable complete? complex confident confused connected conscious
convenient correct? curious dangerous dead decent delicate delicious
dependent desperate distant domestic double dramatic drunk due eager?
effective efficient elderly electric electronic elegant embarrassed
emotional endless enormous equal evil excellent excited exciting expensive
extreme fake famous fantastic fascinating female fictional fierce flexible
formal fortunate fragile frequent friendly frightened frozen? furious
future generous genuine gigantic gorgeous grateful guilty handsome
helpful helpless hollow holy honest? horrible hostile humorous ideal
identical ill illegal imaginary immense incredible independent informal
innocent insane intelligent interesting internal invisible jealous
joyful junior? legal? liquid literary living logical loyal magical male
marine? married massive mature medium? mental miserable mobile moral
mysterious naked native naughty nearby negative nuclear numerous
obedient optimistic orange? ordinary organic outdoor overall parallel
partial passive peaceful permanent pessimistic photographic pink?
pleasant? positive potential powerful practical precious pregnant
prehistoric premium primitive principal professional prominent
psychological punctual purple? puzzled rapid? rare? rational realistic
reasonable rebellious relevant reliable religious? responsible ridiculous
romantic rural sacred satisfied scientific secondary selfish senior?
sensible sensitive sexual shiny? sincere? skilled slender solar solid
sophisticated spare? spectacular spiritual splendid stable standard
steady? sticky stupid successful sufficient suitable superb superior
suspicious technical temporary terrible terrific theoretical thorough
thoughtful tremendous tropical ugly? unable uncomfortable unemployed
unfair unhappy uniform? unknown unlikely upset? urban useful useless
valuable vertical victorious violent virtual visible visual vital
wealthy well? western? wicked wonderful wooden woolen worthy yearly
above? aboard? abroad? actually afterwards ahead almost? already?
although? altogether anybody anyone anything anywhere apart apparently
approximately barely basically briefly carefully certainly cheerfully
clearly completely constantly currently daily definitely deliberately
downstairs downtown during? easily effectively elsewhere entirely
equally especially essentially eventually everybody everyone everything
everywhere exactly extremely fairly finally forever fortunately forward
frequently generally gently gradually greatly hardly heavily highly
honestly hopefully immediately increasingly initially inevitably
largely lately likewise literally locally mainly merely mostly naturally
nearly necessarily nevertheless nobody nonetheless normally nothing
nowadays nowhere obviously occasionally originally overnight overseas
particularly partly perfectly permanently personally possibly precisely
previously primarily probably properly quickly quietly rapidly recently
regularly relatively roughly sadly safely secondly seriously severely
shortly significantly similarly simply slightly slowly smoothly somebody
somehow someone something sometime somewhat somewhere soon specifically
steadily strongly successfully suddenly supposedly surely surprisingly
temporarily terribly thereby thoroughly truly twice typically ultimately
unfortunately upstairs upward virtually widely
"""

# Short high-frequency fill-ins found missing on review.
EXTRA_NOUNS = """
run fly ship gym zoo spa rat elk elm ivy ink hue hub rim ramp mast hull keel
helm stern quay wharf ferry? barge yawl skiff punt dinghy trawler liner tug
blimp drone rover probe lander module booster thruster nozzle valve? duct
vent fan? coil? fuse plug? socket switch? relay diode anode sensor rotor
stator dynamo turbine piston crank shaft gear? pulley? wedge? axle? jack
wrench? visor dash? hood? trunk? fender bumper grille chassis bog fen glen
moor dune levee weir volt watt ohm zinc lead? epic wok dorm quiz exam? raisin
chore flask vial beaker tong tweezer funnel sieve ladle whisk grater peeler
rind pulp husk kernel pod sprout stalk vine root stem? bark sap twig bough
petal pollen nectar hive comb? drone? larva? pupa cocoon molt antenna thorax
abdomen mandible talon hoof mane tusk snout whisker gill scale? fin flipper
tentacle shell? crest? plume quill down? roost burrow? den? lair warren sett
paddock pen? coop sty stable? trough manger bridle saddle? rein stirrup yoke
plow sickle scythe hoe rake trowel spade? shear wheelbarrow silo barnyard
pasture? fallow furrow irrigation mulch compost loam clay? silt gravel?
boulder pebble cobble flint quartz? granite marble? slate shale limestone
sandstone basalt magma lava? ash? ember soot cinder charcoal tar peat coke
alloy bronze pewter chrome nickel? cobalt tungsten mercury uranium radium
sodium calcium? potassium iodine helium neon argon xenon radon methane
ethanol glucose sucrose starch? enzyme lipid peptide amino acid? ion
molecule compound? mixture? solvent solute residue precipitate catalyst
reagent beaker? burner pipette titration litmus
"""

# Surface vocabulary from the toolkit's own pools, kept in the lexicon so
# nonsense tokens can never collide with pool words.
POOL_WORDS = """
husband wife alarm clock smoking tar deposit lung cancer rainfall
sprinkler lawn wet vaccination antibody infection fertilizer soil
nitrogen crop yield studying retention exam success coffee alertness
productivity roadwork congestion arrival medication blood pressure
recovery pesticide pest population fruit quality orchard commuter
avenue downtown patient? student? developer sprint harvest material
memory protective antibodies vaccine lungs dawn noon? elevated
unblemished unsprayed sprayed damaged plentiful abundant depleted
tabby cat? feline carnivore mammal vertebrate chordate animal moth
lepidopteran insect? arthropod invertebrate gecko lizard reptile
sparrow? bird? earthworm annelid bee? hymenopteran spider? arachnid
snake? nematode bilaterian butterfly furry herbivorous multicellular
unicellular segmented feathered warm-blooded cold-blooded six-legged
eight-legged integer integers prime number? natural? real composite
positive imaginary mersenne
"""


def _inflect_noun(stem: str) -> list[str]:
    forms = [stem]
    if stem.endswith(("s", "x", "z", "ch", "sh")):
        forms.append(stem + "es")
    elif stem.endswith("y") and len(stem) > 2 and stem[-2] not in VOWELS:
        forms.append(stem[:-1] + "ies")
    else:
        forms.append(stem + "s")
    return forms


def _double_final(stem: str) -> bool:
    # One-syllable CVC stems double the final consonant: stop -> stopped.
    if len(stem) < 3:
        return False
    a, b, c = stem[-3], stem[-2], stem[-1]
    if c in "wxy" or c in VOWELS:
        return False
    return b in VOWELS and a not in VOWELS and len(stem) <= 4


def _inflect_verb(stem: str) -> list[str]:
    forms = _inflect_noun(stem)  # the -s form shares noun rules
    if stem.endswith("e") and not stem.endswith("ee"):
        base = stem[:-1]
        forms += [base + "ed", base + "ing"]
    elif stem.endswith("y") and len(stem) > 2 and stem[-2] not in VOWELS:
        forms += [stem[:-1] + "ied", stem + "ing"]
    elif _double_final(stem):
        forms += [stem + stem[-1] + "ed", stem + stem[-1] + "ing"]
    else:
        forms += [stem + "ed", stem + "ing"]
    return forms


def _inflect_cmp(stem: str) -> list[str]:
    forms = [stem]
    if stem.endswith("e"):
        forms += [stem + "r", stem + "st"]
    elif stem.endswith("y") and len(stem) > 2 and stem[-2] not in VOWELS:
        forms += [stem[:-1] + "ier", stem[:-1] + "iest"]
    elif _double_final(stem):
        forms += [stem + stem[-1] + "er", stem + stem[-1] + "est"]
    else:
        forms += [stem + "er", stem + "est"]
    return forms


def _inflect_ly(stem: str) -> list[str]:
    forms = [stem]
    if stem.endswith("y") and len(stem) > 2 and stem[-2] not in VOWELS:
        forms.append(stem[:-1] + "ily")
    elif stem.endswith("le") and len(stem) > 3:
        forms.append(stem[:-1] + "y")
    else:
        forms.append(stem + "ly")
    return forms


def _tokens(block: str) -> list[str]:
    # A trailing "?" marks a duplicate of a word already covered elsewhere;
    # the word is kept, the marker dropped.
    out = []
    for raw in block.split():
        word = raw.rstrip("?").strip().lower()
        if word and all("a" <= ch <= "z" or ch == "-" for ch in word):
            out.append(word)
    return out


def build() -> list[str]:
    words: set[str] = set()
    words.update(_tokens(FIXED))
    words.update(_tokens(POOL_WORDS))
    for stem in _tokens(NOUN_WORDS) + _tokens(NOUN_WORDS2) + _tokens(EXTRA_NOUNS):
        words.update(_inflect_noun(stem))
    for stem in _tokens(VERB_WORDS) + _tokens(VERB_WORDS2):
        words.update(_inflect_verb(stem))
    for stem in _tokens(ADJ_CMP_WORDS):
        words.update(_inflect_cmp(stem))
        words.update(_inflect_ly(stem))
    for stem in _tokens(ADJ_LY_WORDS):
        words.update(_inflect_ly(stem))
        words.update(_inflect_noun(stem))
    for stem in _tokens(PLAIN_WORDS):
        words.add(stem)
    return sorted(words)


def main() -> int:
    words = build()
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text("\n".join(words) + "\n", encoding="utf-8")
    print(f"wrote {len(words)} words to {OUT}")
    if len(words) < 10_000:
        print("WARNING: below the 10k target")
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
