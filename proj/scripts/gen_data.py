#!/usr/bin/env python3
"""Deterministic generator for the bundled probing datasets.

The official task and stimulus files are not redistributable from this
repository, so we ship replicas that follow the same file formats, split
sizes, and gold-label distributions (see data/README.md). Re-running this
script reproduces every bundled file byte for byte.

Usage: python3 scripts/gen_data.py [--out data/]
"""

import argparse
import json
import random
from pathlib import Path

SEED = 20260801

# ---------------------------------------------------------------------------
# vocab pools


AGES = list(range(10, 100))

OBJECT_SIZES = [
    "atom", "ant", "bee", "coin", "key", "nail", "spoon", "fork", "egg",
    "mouse", "cup", "apple", "book", "shoe", "hat", "rabbit", "lamp", "cat",
    "dog", "chair", "wolf", "table", "door", "sofa", "cow", "horse", "car",
    "truck", "bus", "house", "barn", "ship", "bridge", "hill", "mountain",
]

SYNONYM_CLUSTERS = [
    ["happy", "glad", "cheerful", "joyful"],
    ["sad", "unhappy", "gloomy", "miserable"],
    ["big", "large", "huge", "enormous"],
    ["small", "tiny", "little", "minute"],
    ["fast", "quick", "rapid", "speedy"],
    ["slow", "sluggish", "unhurried"],
    ["cold", "chilly", "freezing", "icy"],
    ["hot", "scalding", "burning"],
    ["loud", "noisy", "deafening"],
    ["quiet", "silent", "hushed"],
    ["rich", "wealthy", "affluent"],
    ["poor", "broke", "penniless"],
    ["strong", "powerful", "mighty"],
    ["weak", "feeble", "frail"],
    ["smart", "clever", "bright", "intelligent"],
    ["stupid", "foolish", "dumb"],
    ["angry", "furious", "irate"],
    ["calm", "serene", "tranquil"],
    ["tired", "weary", "exhausted"],
    ["scared", "afraid", "terrified"],
    ["wet", "damp", "soaked"],
    ["dry", "arid", "parched"],
    ["clean", "spotless", "immaculate"],
    ["dirty", "filthy", "grimy"],
    ["old", "ancient", "aged"],
    ["new", "fresh", "recent"],
    ["beautiful", "pretty", "lovely", "gorgeous"],
    ["ugly", "hideous", "unsightly"],
    ["funny", "amusing", "hilarious", "comical"],
    ["serious", "solemn", "grave"],
    ["easy", "simple", "effortless"],
    ["difficult", "tough", "tricky"],
    ["generous", "charitable", "giving"],
    ["stingy", "miserly", "grasping"],
]

ANTONYM_CLUSTER_PAIRS = [
    (0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11), (12, 13), (14, 15),
    (16, 17), (18, 19), (20, 21), (22, 23), (24, 25), (26, 27), (28, 29),
    (30, 31), (32, 33),
]

EXTRA_ANTONYM_PAIRS = [
    ("sane", "insane"), ("safe", "dangerous"), ("open", "closed"),
    ("full", "empty"), ("light", "dark"), ("hard", "soft"),
    ("sharp", "dull"), ("smooth", "rough"), ("deep", "shallow"),
    ("early", "late"), ("true", "false"), ("near", "far"),
    ("high", "low"), ("wide", "narrow"), ("thick", "thin"),
    ("brave", "cowardly"), ("tight", "loose"), ("tall", "short"),
    ("heavy", "weightless"), ("bitter", "sweet"), ("awake", "asleep"),
    ("visible", "invisible"), ("possible", "impossible"),
    ("polite", "rude"), ("guilty", "innocent"), ("patient", "restless"),
]

NOUN_SYNONYM_PAIRS = [
    ("a fracture", "a break"), ("a street", "a road"),
    ("a couch", "a sofa"), ("a gift", "a present"),
    ("a shop", "a store"), ("a ship", "a boat"),
    ("a meal", "a dinner"), ("a rug", "a carpet"),
    ("a film", "a movie"), ("a cab", "a taxi"),
    ("a child", "a kid"), ("a doctor", "a physician"),
    ("a mistake", "an error"), ("a garbage bin", "a trash can"),
]

NOUN_ANTONYM_PAIRS = [
    ("a victory", "a defeat"), ("a question", "an answer"),
    ("a beginning", "an end"), ("a friend", "an enemy"),
    ("a whisper", "a shout"), ("a sunrise", "a sunset"),
    ("an entrance", "an exit"), ("a profit", "a loss"),
    ("an ascent", "a descent"), ("an arrival", "a departure"),
]

TAXONOMY_FAMILIES = {
    # super -> {sub -> [members]}
    "craft": {
        "airplane": ["biplane", "jet", "glider", "seaplane", "monoplane"],
        "boat": ["ferry", "canoe", "kayak", "yacht", "tugboat", "dinghy"],
        "helicopter": ["gyrocopter", "chopper"],
    },
    "animal": {
        "fish": ["salmon", "trout", "cod", "tuna", "herring", "mackerel"],
        "bird": ["robin", "sparrow", "eagle", "crow", "owl", "finch"],
        "dog": ["poodle", "beagle", "terrier", "bulldog", "basset", "spaniel"],
        "cat": ["tabby", "siamese", "persian", "bengal"],
    },
    "plant": {
        "tree": ["oak", "pine", "birch", "maple", "willow", "aspen"],
        "flower": ["rose", "tulip", "daisy", "lily", "orchid", "peony"],
        "grass": ["bamboo", "wheat", "barley"],
    },
    "instrument": {
        "horn": ["trumpet", "tuba", "cornet"],
        "drum": ["bongo", "snare", "timpani", "tomtom"],
        "guitar": ["banjo", "ukulele", "mandolin"],
    },
    "tool": {
        "hammer": ["mallet", "sledgehammer"],
        "saw": ["hacksaw", "chainsaw", "jigsaw"],
        "drill": ["auger", "gimlet", "brace"],
    },
    "vehicle": {
        "car": ["sedan", "coupe", "hatchback", "limousine"],
        "truck": ["pickup", "lorry", "tanker"],
        "bike": ["tricycle", "tandem", "unicycle"],
    },
}

HYPERNYM_FAMILIES = {
    "mammal": {
        "primate": ["tamarin", "gibbon", "lemur", "baboon"],
        "rodent": ["hamster", "squirrel", "chipmunk", "gerbil"],
        "feline": ["lynx", "ocelot", "cougar"],
    },
    "fabric": {
        "silk": ["chiffon", "crepe"],
        "wool": ["tweed", "flannel", "cashmere"],
        "cotton": ["denim", "corduroy", "muslin"],
    },
    "grain": {
        "rice": ["basmati", "jasmine"],
        "corn": ["popcorn", "maize"],
        "oat": ["granola", "muesli"],
    },
    "fruit": {
        "berry": ["strawberry", "blueberry", "raspberry"],
        "citrus": ["lemon", "orange", "grapefruit", "lime"],
        "melon": ["cantaloupe", "honeydew", "watermelon"],
    },
}

ANIMALS = [
    "cat", "dog", "cow", "horse", "sheep", "goat", "pig", "duck", "goose",
    "rabbit", "fox", "wolf", "bear", "deer", "mouse", "rat", "frog", "toad",
    "snake", "lizard", "spider", "beetle", "moth", "crab", "whale",
    "dolphin", "seal", "otter", "camel", "donkey", "llama", "monkey",
    "tiger", "lion", "zebra", "giraffe", "penguin", "parrot", "turtle",
    "snail",
]

MACHINE_PARTS = [
    "wheels", "gears", "propellers", "antennas", "batteries", "pistons",
    "keyboards", "headlights", "windshields", "rudders", "turbines",
    "speakers", "engines", "circuits", "magnets", "exhaust pipes",
    "touchscreens", "hinges", "springs", "zippers", "levers", "pulleys",
    "dials", "sockets", "fuses",
]

BODY_PARTS = ["a heart", "a skeleton", "a brain", "lungs", "a stomach",
              "muscles", "blood", "skin", "a head", "eyes"]

RARE_TRAITS = ["albino", "three legged", "completely hairless", "born with two heads",
               "pure white", "entirely black", "blind from birth", "missing a tail"]

SOMETIMES_TRAITS = ["asleep at noon", "hungry", "seen in cities", "kept as a pet",
                    "afraid of loud noises", "found near rivers", "playful",
                    "aggressive", "spotted", "striped", "curious about people",
                    "easy to startle", "seen in pairs", "heard at dawn"]

OFTEN_TRAITS = ["active at night", "found in groups", "seen near farms",
                "hunting at dusk", "resting in the shade", "grooming itself",
                "searching for food", "close to water"]

SHAPES = [("triangle", "three sides"), ("square", "four sides"),
          ("pentagon", "five sides"), ("hexagon", "six sides"),
          ("octagon", "eight sides"), ("cube", "six faces"),
          ("circle", "a round edge"), ("sphere", "a curved surface")]

PROPERTY_CONJUNCTION = [
    # (prop1, prop2, gold, related-to-1-only, related-to-2-only)
    ("vertical", "honest", "straight", "steep", "trustworthy"),
    ("cold", "sweet", "ice cream", "snow", "candy"),
    ("hot", "bright", "the sun", "a stove", "a lamp"),
    ("fast", "loud", "a motorcycle", "a cheetah", "a siren"),
    ("round", "orange", "a basketball", "a wheel", "a carrot"),
    ("green", "sour", "a lime", "grass", "vinegar"),
    ("yellow", "long", "a banana", "a lemon", "a river"),
    ("dark", "quiet", "the night", "a cave", "a library"),
    ("wet", "salty", "the ocean", "rain", "a pretzel"),
    ("tall", "green", "a tree", "a tower", "a leaf"),
    ("cold", "white", "snow", "a fridge", "paper"),
    ("sharp", "shiny", "a knife", "a thorn", "a mirror"),
    ("soft", "warm", "a blanket", "a pillow", "a fire"),
    ("heavy", "gray", "an elephant", "an anvil", "a cloud"),
    ("sweet", "sticky", "honey", "sugar", "glue"),
    ("fast", "red", "a fire truck", "a rocket", "a tomato"),
    ("small", "buzzing", "a bee", "a pebble", "a phone"),
    ("old", "wise", "an owl", "a ruin", "a teacher"),
    ("round", "bouncy", "a rubber ball", "a coin", "a trampoline"),
    ("bright", "musical", "a trumpet", "a flashlight", "a violin"),
    ("slow", "armored", "a turtle", "a snail", "a tank"),
    ("white", "fluffy", "a cloud", "chalk", "a sweater"),
    ("long", "slippery", "an eel", "a rope", "soap"),
    ("loud", "stormy", "thunder", "a drum", "heavy rain"),
    ("smooth", "cold", "marble", "silk", "an icicle"),
    ("tiny", "glowing", "a firefly", "a crumb", "a lantern"),
    ("striped", "fast", "a zebra", "a flag", "a sprinter"),
    ("deep", "blue", "the sea", "a well", "a sapphire"),
    ("sour", "juicy", "a grapefruit", "pickles", "a peach"),
    ("hard", "precious", "a diamond", "concrete", "gold"),
    ("quiet", "careful", "a librarian", "a mouse", "a surgeon"),
    ("flat", "dry", "a desert", "a pancake", "sand"),
    ("light", "foldable", "paper", "a feather", "a map"),
    ("spicy", "red", "a chili pepper", "mustard", "a rose"),
    ("fragile", "clear", "glass", "an eggshell", "water"),
    ("warm", "golden", "toast", "a scarf", "a medal"),
    ("slow", "gray", "a sloth", "a queue", "fog"),
    ("noisy", "crowded", "a market", "an alarm", "a stadium"),
    ("icy", "steep", "a glacier", "a freezer", "a ladder"),
    ("dusty", "old", "an attic", "a road", "a fossil"),
    ("swift", "feathered", "a falcon", "an arrow", "a pillow"),
    ("bitter", "hot", "black coffee", "medicine", "a kettle"),
    ("rough", "huge", "a boulder", "sandpaper", "a whale"),
    ("silent", "bright", "a star", "a mime", "a spotlight"),
    ("sticky", "green", "a frog", "tape", "spinach"),
]

FIRST_NAMES = ["Alan", "Brian", "Carla", "Derek", "Elena", "Frank", "Grace",
               "Henry", "Irene", "Jonas", "Karen", "Louis", "Maria", "Nina",
               "Oscar", "Paula", "Quinn", "Rosa", "Simon", "Tessa", "Ulrich",
               "Vera", "Walter", "Ximena", "Yann", "Zelda", "Arthur", "Bella",
               "Caleb", "Dora"]

LAST_NAMES = ["Vega", "Moretti", "Klein", "Sandoval", "Okafor", "Lindqvist",
              "Barros", "Tanaka", "Novak", "Reyes", "Dubois", "Haas",
              "Ivanov", "Costa", "Nilsen", "Farkas", "Olsen", "Petit",
              "Quintero", "Rossi", "Silva", "Toledo", "Ueda", "Varga",
              "Weiss", "Xu", "Yilmaz", "Zamora", "Adler", "Bruno"]

BAND_WORDS = ["Static", "Orbit", "Velvet", "Neon", "Echo", "Granite",
              "Paper", "Crimson", "Hollow", "Electric", "Lunar", "Copper",
              "Silver", "Midnight", "Plastic", "Golden", "Iron", "Glass",
              "Scarlet", "Arctic"]

BAND_NOUNS = ["Foxes", "Wires", "Harbor", "Union", "Parade", "Castles",
              "Mirrors", "Saints", "Pilots", "Gardens", "Rivers", "Owls",
              "Giants", "Lanterns", "Motors", "Tigers", "Canyons",
              "Sparrows", "Engines", "Comets"]

CPRAG_ITEMS = [
    # (context, expected, within-category foil, between-category foil)
    ("Justin put a second house on Park Place. He and his sister often spent hours playing",
     "monopoly", "chess", "baseball"),
    ("“Checkmate,” Rosaline announced with glee. She was getting to be really good at",
     "chess", "checkers", "soccer"),
    ("The pitcher threw a curveball and the batter swung too late. The crowd loved watching",
     "baseball", "cricket", "poker"),
    ("Marco laced up his skates and grabbed his stick. He could not wait to play",
     "hockey", "tennis", "cards"),
    ("Dana dribbled past two defenders and scored in the top corner. She had trained all year for",
     "soccer", "rugby", "darts"),
    ("Grandpa shuffled the deck and dealt five cards to each of us. We stayed up late playing",
     "poker", "bridge", "golf"),
    ("Leah tightened the strings and tuned each one carefully. Then she began to play the",
     "guitar", "violin", "drums"),
    ("Tom pressed the keys softly while reading the sheet music. He practiced the",
     "piano", "organ", "trumpet"),
    ("The drummer counted off and Pete raised the shiny horn to his lips. He had just started learning the",
     "trumpet", "trombone", "flute"),
    ("Mia sliced the crust and cheese dripped onto the plate. Everyone wanted another piece of",
     "pizza", "pie", "soup"),
    ("Omar stacked two patties with lettuce and a bun. He grilled the best",
     "burgers", "sausages", "salads"),
    ("Nora poured the batter and flipped it when the bubbles appeared. The kids asked for more",
     "pancakes", "waffles", "noodles"),
    ("The kettle whistled and Iris dropped a bag into her mug. She always started the day with",
     "tea", "coffee", "juice"),
    ("Felix ground the beans and the kitchen smelled wonderful. He could not start work without his",
     "coffee", "cocoa", "water"),
    ("Sam spread the blanket on the sand and watched the waves. The family loved a day at the",
     "beach", "lake", "museum"),
    ("Ruth pitched the tent while Dad lit the campfire. They spent the weekend",
     "camping", "hiking", "shopping"),
    ("Ben clipped into the pedals and adjusted his helmet. He rode to school on his",
     "bike", "scooter", "sled"),
    ("The conductor punched our tickets as the carriages rattled on. We dozed on the",
     "train", "tram", "plane"),
    ("Ava buckled her seatbelt as the engines roared down the runway. She slept through most of the flight on the",
     "plane", "helicopter", "ferry"),
    ("Noah whistled and the border collie herded the flock into the pen. He relied on his",
     "dog", "cat", "horse"),
    ("Lily filled the bowl and the goldfish swam in circles. She loved feeding her",
     "fish", "turtle", "parrot"),
    ("The vet trimmed the stallion's hooves and checked his teeth. Clara saddled up her",
     "horse", "pony", "camel"),
    ("Ed swung the axe and the log split cleanly in two. He stacked wood beside the",
     "fireplace", "stove", "fountain"),
    ("Hal hammered the last nail into the birdhouse roof. He put away his",
     "hammer", "wrench", "ladle"),
    ("Joan tightened the bolt with a quick twist of the handle. She borrowed my",
     "wrench", "pliers", "crayon"),
    ("The librarian stamped the card and slid two novels across the desk. Vic spent the afternoon at the",
     "library", "bookstore", "gym"),
    ("Tessa mixed red and yellow on her palette to get orange. She cleaned her",
     "brushes", "pencils", "rackets"),
    ("The dentist told Lee to floss more and filled one cavity. Lee hated visiting the",
     "dentist", "doctor", "barber"),
    ("Gus lathered the shampoo and rinsed the soap from his hair. He sang loudly in the",
     "shower", "bathtub", "garage"),
    ("May watered the tomatoes and pulled a few weeds. She spent every morning in her",
     "garden", "greenhouse", "kitchen"),
    ("The chef sharpened his blade before slicing the onions. He reached for the cutting",
     "board", "knife", "napkin"),
    ("Walt aimed at the pins and rolled the heavy ball down the lane. He went",
     "bowling", "skating", "painting"),
    ("Pia zipped her parka and clipped on her skis at the summit. She raced down the",
     "slope", "trail", "street"),
    ("The magician pulled a rabbit from it and took a bow. The children clapped at the old",
     "hat", "coat", "lamp"),
]

ROLE_ITEMS = [
    # (reporter, noun_a, noun_b, verb_for_a_object, verb_for_b_object)
    ("owner", "customer", "waitress", "served", "paid"),
    ("coach", "runner", "doctor", "examined", "trained"),
    ("teacher", "student", "tutor", "helped", "thanked"),
    ("farmer", "horse", "vet", "treated", "kicked"),
    ("editor", "author", "critic", "praised", "quoted"),
    ("warden", "prisoner", "guard", "watched", "tricked"),
    ("manager", "singer", "fan", "cheered", "ignored"),
    ("captain", "sailor", "pirate", "robbed", "fought"),
    ("judge", "lawyer", "witness", "questioned", "defended"),
    ("nurse", "patient", "surgeon", "operated on", "called"),
    ("director", "actor", "stuntman", "replaced", "admired"),
    ("shepherd", "lamb", "wolf", "chased", "escaped"),
    ("banker", "client", "advisor", "advised", "trusted"),
    ("principal", "pupil", "janitor", "greeted", "avoided"),
    ("landlord", "tenant", "plumber", "billed", "phoned"),
    ("curator", "painter", "collector", "sponsored", "copied"),
    ("referee", "boxer", "trainer", "coached", "warned"),
    ("chef", "waiter", "dishwasher", "assisted", "scolded"),
    ("pilot", "passenger", "steward", "seated", "annoyed"),
    ("sheriff", "rancher", "rustler", "robbed", "hired"),
    ("keeper", "lion", "visitor", "startled", "fed"),
    ("producer", "writer", "composer", "hired", "imitated"),
    ("dean", "professor", "student", "failed", "nominated"),
    ("grocer", "supplier", "shopper", "overcharged", "supplied"),
    ("tailor", "customer", "apprentice", "measured", "paid"),
    ("gardener", "neighbor", "beekeeper", "helped", "stung"),
    ("detective", "suspect", "informer", "betrayed", "followed"),
    ("dentist", "child", "hygienist", "calmed", "bit"),
    ("umpire", "batter", "bowler", "bowled", "struck"),
    ("mayor", "reporter", "aide", "briefed", "interviewed"),
    ("miller", "baker", "farmer", "supplied", "paid"),
    ("scout", "recruit", "sergeant", "drilled", "impressed"),
    ("broker", "buyer", "seller", "underbid", "courted"),
    ("fisherman", "seal", "tourist", "photographed", "startled"),
    ("innkeeper", "guest", "cook", "fed", "tipped"),
    ("professor", "assistant", "reviewer", "criticized", "defended"),
    ("trainer", "dolphin", "crowd", "delighted", "splashed"),
    ("foreman", "welder", "inspector", "passed", "warned"),
    ("ranger", "camper", "bear", "frightened", "reported"),
    ("clerk", "customer", "manager", "promoted", "greeted"),
    ("barber", "client", "barista", "served", "tipped"),
    ("jeweler", "bride", "groom", "surprised", "charged"),
    ("surgeon", "intern", "anesthetist", "assisted", "paged"),
    ("auctioneer", "bidder", "appraiser", "advised", "outbid"),
]

NEG_SIMP_ITEMS = [
    # (item, article, category, foil)
    ("salmon", "a", "fish", "dog"),
    ("robin", "a", "bird", "tree"),
    ("oak", "an", "tree", "bird"),
    ("hammer", "a", "tool", "fruit"),
    ("apple", "an", "fruit", "tool"),
    ("trout", "a", "fish", "hat"),
    ("sparrow", "a", "bird", "car"),
    ("pine", "a", "tree", "fish"),
    ("banana", "a", "fruit", "chair"),
    ("saw", "a", "tool", "bird"),
    ("rose", "a", "flower", "engine"),
    ("tulip", "a", "flower", "truck"),
    ("carrot", "a", "vegetable", "lamp"),
    ("onion", "an", "vegetable", "boat"),
    ("poodle", "a", "dog", "melon"),
    ("beagle", "a", "dog", "spoon"),
    ("trumpet", "a", "instrument", "insect"),
    ("drum", "a", "instrument", "berry"),
]

NEG_NAT_ITEMS = [
    # (subject-phrase, good-affirmative, bad-affirmative)
    ("Rockets and missiles are very", "fast", "slow"),
    ("Libraries are usually very", "quiet", "loud"),
    ("Deserts are almost always very", "dry", "wet"),
    ("Glaciers are of course very", "cold", "hot"),
    ("Feathers are famously very", "light", "heavy"),
    ("Skyscrapers are by definition very", "tall", "short"),
    ("Razors are supposed to be very", "sharp", "dull"),
    ("Marathons are known to be very", "long", "short"),
]

NEG_LNAT_ITEMS = [
    ("With proper care, a cactus is surprisingly easy to keep", "alive", "wet"),
    ("If you ask me, most opera performances run rather", "long", "quiet"),
    ("To a beginner, the rules of cricket can seem quite", "confusing", "simple"),
    ("For its size, an ant is considered remarkably", "strong", "heavy"),
    ("In midwinter, the days this far north stay fairly", "dark", "warm"),
    ("Compared to gold, ordinary tin is relatively", "cheap", "rare"),
    ("Without any seasoning, boiled rice tastes rather", "plain", "sweet"),
    ("Even on weekends, the old harbor district feels oddly", "empty", "loud"),
]


# ---------------------------------------------------------------------------
# helpers


def write_jsonl(path: Path, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")
    print(f"wrote {path} ({len(rows)} rows)")


def write_tsv(path: Path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        f.write("# " + "\t".join(header) + "\n")
        for row in rows:
            f.write("\t".join(str(c) for c in row) + "\n")
    print(f"wrote {path} ({len(rows)} rows)")


def gold_plan(rng, counts):
    """Shuffled list of gold positions with exact per-position counts."""
    plan = []
    for pos, c in enumerate(counts):
        plan.extend([pos] * c)
    rng.shuffle(plan)
    return plan


# ---------------------------------------------------------------------------
# oLMpics tasks


def gen_age(rng, n, gold0, seen):
    # stems are unique within and across splits so that score dumps keyed
    # by input text stay well defined
    rows = []
    plan = gold_plan(rng, [gold0, n - gold0])
    for i, gold in enumerate(plan):
        while True:
            x, y = rng.sample(AGES, 2)
            # gold 0 = "younger": first age must be the smaller one
            if (x < y) != (gold == 0):
                x, y = y, x
            stem = (f"A {x} year old person age is [MASK] than a {y} "
                    f"year old person.")
            if stem not in seen:
                seen.add(stem)
                break
        rows.append({"stem": stem, "choices": ["younger", "older"],
                     "answer": gold, "metadata": {"id": f"age-{i:04d}"}})
    return rows


def gen_object(rng, n, gold0, seen):
    rank = {w: i for i, w in enumerate(OBJECT_SIZES)}
    rows = []
    plan = gold_plan(rng, [gold0, n - gold0])
    for i, gold in enumerate(plan):
        while True:
            a, b = rng.sample(OBJECT_SIZES, 2)
            if (rank[a] < rank[b]) != (gold == 0):
                a, b = b, a
            stem = (f"The size of a {a} is usually [MASK] than the size "
                    f"of a {b}.")
            if stem not in seen:
                seen.add(stem)
                break
        rows.append({"stem": stem, "choices": ["smaller", "larger"],
                     "answer": gold, "metadata": {"id": f"obj-{i:04d}"}})
    return rows


def antonym_pool():
    syn, ant = [], []
    for cluster in SYNONYM_CLUSTERS:
        for a in cluster:
            for b in cluster:
                if a != b:
                    syn.append((a, b))
    for i, j in ANTONYM_CLUSTER_PAIRS:
        for a in SYNONYM_CLUSTERS[i]:
            for b in SYNONYM_CLUSTERS[j]:
                ant.append((a, b))
                ant.append((b, a))
    for a, b in EXTRA_ANTONYM_PAIRS:
        ant.append((a, b))
        ant.append((b, a))
    for a, b in NOUN_SYNONYM_PAIRS:
        syn.append((a, b))
        syn.append((b, a))
    for a, b in NOUN_ANTONYM_PAIRS:
        ant.append((a, b))
        ant.append((b, a))
    return syn, ant


def gen_antonym(rng, n, gold_really, sample_first=False):
    # the word-pair pool is finite; dev draws without repetition, train
    # may cycle
    syn, ant = antonym_pool()
    syn = sorted(set(syn))
    ant = sorted(set(ant))
    rng.shuffle(syn)
    rng.shuffle(ant)
    rows = []
    used = set()
    plan = gold_plan(rng, [gold_really, n - gold_really])
    if sample_first:
        # the canonical prompt-study items take the first two slots; keep
        # the gold plan balanced by pinning matching slots
        plan[0] = 1
        plan[1] = 0
        k0 = plan[2:].count(0)
        need0 = gold_really - 1
        i = 2
        while k0 != need0 and i < len(plan):
            if k0 > need0 and plan[i] == 0:
                plan[i] = 1
                k0 -= 1
            elif k0 < need0 and plan[i] == 1:
                plan[i] = 0
                k0 += 1
            i += 1
    si = ai = 0

    def next_stem(gold):
        nonlocal si, ai
        pool = syn if gold == 0 else ant
        for _ in range(len(pool) + 1):
            if gold == 0:
                a, b = pool[si % len(pool)]
                si += 1
            else:
                a, b = pool[ai % len(pool)]
                ai += 1
            stem = f"It was [MASK] {a}, it was really {b}."
            if stem not in used:
                return stem
        return stem  # pool exhausted: repetition is unavoidable

    for i, gold in enumerate(plan):
        if sample_first and i == 0:
            stem = "It was [MASK] sane, it was really insane"
            meta = "ant-sample"
        elif sample_first and i == 1:
            stem = "It was [MASK] a fracture, it was really a break."
            meta = "ant-fracture"
        else:
            stem = next_stem(gold)
            meta = f"ant-{i:04d}"
        used.add(stem)
        rows.append({"stem": stem, "choices": ["really", "not"],
                     "answer": gold, "metadata": {"id": meta}})
    return rows


def conjunction_pool(rng, families):
    combos = []
    for sup, subs in sorted(families.items()):
        names = sorted(subs)
        for i in range(len(names)):
            for j in range(len(names)):
                if i == j:
                    continue
                for mx in subs[names[i]]:
                    for my in subs[names[j]]:
                        combos.append((mx, my, sup, names[i], names[j]))
    rng.shuffle(combos)
    return combos


def conjunction_rows(rng, combos, n, counts, prefix, cursor):
    plan = gold_plan(rng, counts)
    rows = []
    start = cursor[0]
    for i, gold in enumerate(plan):
        mx, my, sup, sx, sy = combos[(start + i) % len(combos)]
        choices = [None, None, None]
        choices[gold] = sup
        rest = [sx, sy]
        slots = [p for p in range(3) if p != gold]
        for slot, w in zip(slots, rest):
            choices[slot] = w
        art_x = "an" if mx[0] in "aeiou" else "a"
        art_y = "an" if my[0] in "aeiou" else "a"
        stem = f"A {mx} and {art_y} {my} are both a type of [MASK]."
        if art_x == "an":
            stem = f"An {mx} and {art_y} {my} are both a type of [MASK]."
        rows.append({"stem": stem, "choices": choices, "answer": gold,
                     "metadata": {"id": f"{prefix}-{i:04d}"}})
    cursor[0] = (start + len(plan)) % len(combos)
    return rows


def always_never_pools(rng):
    pools = {0: [], 1: [], 2: [], 3: [], 4: []}
    for a in ANIMALS:
        art = "An" if a[0] in "aeiou" else "A"
        for p in MACHINE_PARTS:
            pools[0].append(f"{art} {a} [MASK] has {p}.")
        for t in RARE_TRAITS:
            pools[1].append(f"{art} {a} [MASK] is {t}.")
        for t in SOMETIMES_TRAITS:
            pools[2].append(f"{art} {a} [MASK] is {t}.")
        for t in OFTEN_TRAITS:
            pools[3].append(f"{art} {a} [MASK] is {t}.")
        for p in BODY_PARTS:
            pools[4].append(f"{art} {a} [MASK] has {p}.")
    for s, attr in SHAPES:
        art = "An" if s[0] in "aeiou" else "A"
        pools[4].append(f"{art} {s} [MASK] has {attr}.")
    for k in pools:
        rng.shuffle(pools[k])
    return pools


def gen_always_never(rng, n, counts, pools, used):
    # pools and cursors are shared across splits: stems stay unique and
    # the splits stay disjoint as long as the pools last
    choices = ["never", "rarely", "sometimes", "often", "always"]
    plan = gold_plan(rng, counts)
    rows = []
    for i, gold in enumerate(plan):
        pool = pools[gold]
        stem = pool[used[gold] % len(pool)]
        used[gold] += 1
        rows.append({"stem": stem, "choices": choices, "answer": gold,
                     "metadata": {"id": f"an-{i:04d}"}})
    return rows


def gen_multihop(rng, n, counts, seen):
    rows = []
    plan = gold_plan(rng, counts)
    for i, gold in enumerate(plan):
        while True:
            ages = rng.sample(AGES, 3)
            oldest = max(ages)
            ages.remove(oldest)
            ages.insert(gold, oldest)
            stem = (f"When comparing a {ages[0]} year old, {ages[1]} year "
                    f"old, and {ages[2]} year old, the [MASK] is oldest.")
            if stem not in seen:
                seen.add(stem)
                break
        rows.append({"stem": stem,
                     "choices": ["first", "second", "third"],
                     "answer": gold, "metadata": {"id": f"mh-{i:04d}"}})
    return rows


def gen_property(rng, n, counts):
    plan = gold_plan(rng, counts)
    rows = []
    for i, gold in enumerate(plan):
        p1, p2, g, d1, d2 = PROPERTY_CONJUNCTION[i % len(PROPERTY_CONJUNCTION)]
        if (i // len(PROPERTY_CONJUNCTION)) % 2 == 1:
            p1, p2 = p2, p1
            d1, d2 = d2, d1
        choices = [None, None, None]
        choices[gold] = g
        slots = [p for p in range(3) if p != gold]
        for slot, w in zip(slots, [d1, d2]):
            choices[slot] = w
        stem = f"What is related to {p1} and is related to {p2}?"
        rows.append({"stem": stem, "choices": choices, "answer": gold,
                     "metadata": {"id": f"prop-{i:04d}"}})
    return rows


def people_pool(rng):
    people = []
    for fn in FIRST_NAMES:
        for ln in LAST_NAMES:
            people.append(f"{fn} {ln}")
    rng.shuffle(people)
    return people


def gen_encyclopedic(rng, n, counts, people, cursor):
    plan = gold_plan(rng, counts)
    rows = []
    start = cursor[0]
    cursor[0] += len(plan)
    for i, gold in enumerate(plan):
        person = people[(start + i) % len(people)]
        year = rng.randint(1955, 1999)
        offsets = rng.sample([-2, -1, 1, 2], 2)
        wrong = [year + offsets[0], year + offsets[1]]
        choices = [None, None, None]
        choices[gold] = str(year)
        slots = [p for p in range(3) if p != gold]
        for slot, w in zip(slots, wrong):
            choices[slot] = str(w)
        stem = f"When did the band where {person} played first form?"
        rows.append({"stem": stem, "choices": choices, "answer": gold,
                     "metadata": {"id": f"enc-{i:04d}"}})
    return rows


# ---------------------------------------------------------------------------
# psycholinguistic files


def gen_psych(out):
    rows = [(f"cprag-{i:03d}", ctx, exp, win, btw)
            for i, (ctx, exp, win, btw) in enumerate(CPRAG_ITEMS)]
    write_tsv(out / "psych" / "cprag.tsv",
              ["item_id", "context", "expected", "within_category",
               "between_category"], rows)

    rows = []
    for i, (rep, a, b, va, vb) in enumerate(ROLE_ITEMS):
        ctx1 = f"The {rep} remembered which {a} the {b} had"
        ctx2 = f"The {rep} remembered which {b} the {a} had"
        rows.append((f"role-{i:03d}a", ctx1, va, vb))
        rows.append((f"role-{i:03d}b", ctx2, vb, va))
    write_tsv(out / "psych" / "role.tsv",
              ["item_id", "context", "expected", "competitor"], rows)

    rows = []
    for i, (item, art, cat, foil) in enumerate(NEG_SIMP_ITEMS):
        aff = f"{art.capitalize()} {item} is a"
        neg = f"{art.capitalize()} {item} is not a"
        rows.append((f"simp-{i:03d}", "affirmative", aff, cat, foil))
        rows.append((f"simp-{i:03d}", "negated", neg, foil, cat))
    write_tsv(out / "psych" / "neg_simp.tsv",
              ["item_id", "condition", "context", "good", "bad"], rows)

    def neg_nat_rows(items, tag):
        rows = []
        for i, (subject, good, bad) in enumerate(items):
            neg_subject = negate_phrase(subject)
            rows.append((f"{tag}-{i:03d}", "affirmative", subject, good, bad))
            rows.append((f"{tag}-{i:03d}", "negated", neg_subject, bad, good))
        return rows

    write_tsv(out / "psych" / "neg_nat.tsv",
              ["item_id", "condition", "context", "good", "bad"],
              neg_nat_rows(NEG_NAT_ITEMS, "nat"))
    write_tsv(out / "psych" / "neg_lnat.tsv",
              ["item_id", "condition", "context", "good", "bad"],
              neg_nat_rows(NEG_LNAT_ITEMS, "lnat"))


def negate_phrase(phrase):
    replacements = [
        (" are ", " aren't "),
        (" is ", " isn't "),
        (" run ", " don't run "),
        (" stay ", " don't stay "),
        (" can seem ", " can't seem "),
        (" tastes ", " doesn't taste "),
        (" feels ", " doesn't feel "),
    ]
    for old, new in replacements:
        if old in phrase:
            return phrase.replace(old, new, 1)
    raise ValueError(f"no negation rule for: {phrase}")


# ---------------------------------------------------------------------------
# n-gram training corpus


def gen_corpus(rng, out):
    lines = []

    def add(line):
        lines.append(line)

    rank = {w: i for i, w in enumerate(OBJECT_SIZES)}
    for _ in range(1400):
        x, y = rng.sample(AGES, 2)
        rel = "younger" if x < y else "older"
        add(f"A {x} year old person age is {rel} than a {y} year old person .")
    for _ in range(400):
        x, y, z = rng.sample(AGES, 3)
        top = ["first", "second", "third"][[x, y, z].index(max(x, y, z))]
        add(f"When comparing a {x} year old , {y} year old , and {z} year old , the {top} is oldest .")
    for _ in range(900):
        a, b = rng.sample(OBJECT_SIZES, 2)
        rel = "smaller" if rank[a] < rank[b] else "larger"
        add(f"The size of a {a} is usually {rel} than the size of a {b} .")
    syn, ant = antonym_pool()
    for _ in range(500):
        a, b = syn[rng.randrange(len(syn))]
        add(f"It was really {a} , it was really {b} .")
    for _ in range(500):
        a, b = ant[rng.randrange(len(ant))]
        add(f"It was not {a} , it was really {b} .")
    for fams in (TAXONOMY_FAMILIES, HYPERNYM_FAMILIES):
        for sup, subs in sorted(fams.items()):
            for sub, members in sorted(subs.items()):
                art_sub = "an" if sub[0] in "aeiou" else "a"
                art_sup = "an" if sup[0] in "aeiou" else "a"
                for m in members:
                    art_m = "An" if m[0] in "aeiou" else "A"
                    for _ in range(3):
                        add(f"{art_m} {m} is {art_sub} {sub} .")
                        add(f"{art_m} {m} is also {art_sup} {sup} .")
                for other in sorted(subs):
                    if other != sub:
                        for m in members:
                            mo = subs[other][0]
                            art_m = "An" if m[0] in "aeiou" else "A"
                            add(f"{art_m} {m} and a {mo} are both a type of {sup} .")
    for item, art, cat, foil in NEG_SIMP_ITEMS:
        cap = art.capitalize()
        for _ in range(4):
            add(f"{cap} {item} is a {cat} .")
            add(f"{cap} {item} is not a {foil} .")
    for subject, good, bad in NEG_NAT_ITEMS + NEG_LNAT_ITEMS:
        for _ in range(4):
            add(f"{subject} {good} .")
            add(f"{negate_phrase(subject)} {bad} .")
    for ctx, exp, win, btw in CPRAG_ITEMS:
        for w in (exp, exp, exp, win, btw):
            add(f"{ctx} {w} .")
    for rep, a, b, va, vb in ROLE_ITEMS:
        add(f"The {rep} remembered which {a} the {b} had {va} .")
        add(f"The {rep} remembered which {b} the {a} had {vb} .")
    for a in ANIMALS:
        art = "An" if a[0] in "aeiou" else "A"
        for p in rng.sample(BODY_PARTS, 4):
            add(f"{art} {a} always has {p} .")
        for p in rng.sample(MACHINE_PARTS, 4):
            add(f"{art} {a} never has {p} .")
        for t in rng.sample(SOMETIMES_TRAITS, 3):
            add(f"{art} {a} sometimes is {t} .")
        for t in rng.sample(OFTEN_TRAITS, 2):
            add(f"{art} {a} often is {t} .")
        for t in rng.sample(RARE_TRAITS, 2):
            add(f"{art} {a} rarely is {t} .")
    for p1, p2, g, d1, d2 in PROPERTY_CONJUNCTION:
        add(f"{g} is related to {p1} and is related to {p2} .")
        add(f"{d1} is related to {p1} .")
        add(f"{d2} is related to {p2} .")
    for i in range(200):
        fn = FIRST_NAMES[i % len(FIRST_NAMES)]
        ln = LAST_NAMES[(i * 7) % len(LAST_NAMES)]
        band = (f"{BAND_WORDS[i % len(BAND_WORDS)]} "
                f"{BAND_NOUNS[(i * 3) % len(BAND_NOUNS)]}")
        year = rng.randint(1955, 1999)
        add(f"The band where {fn} {ln} played first formed in {year} .")
    for _ in range(300):
        q = rng.choice(["Was it good ?", "Was it sane ?", "Was it fast ?",
                        "Is that true ?", "Did it work ?"])
        a = rng.choice(["yes", "yes", "no"])
        add(f"{q} {a} .")

    rng.shuffle(lines)
    path = out / "corpus" / "tiny_corpus.txt"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {path} ({len(lines)} lines)")


# ---------------------------------------------------------------------------


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data")
    args = ap.parse_args()
    out = Path(args.out)
    rng = random.Random(SEED)

    olm = out / "olmpics"
    age_seen = set()
    write_jsonl(olm / "age_comparison_dev.jsonl",
                gen_age(rng, 500, 253, age_seen))
    write_jsonl(olm / "age_comparison_train.jsonl",
                gen_age(rng, 2000, 1000, age_seen))
    obj_seen = set()
    write_jsonl(olm / "object_comparison_dev.jsonl",
                gen_object(rng, 500, 253, obj_seen))
    write_jsonl(olm / "object_comparison_train.jsonl",
                gen_object(rng, 500, 250, obj_seen))
    write_jsonl(olm / "antonym_negation_dev.jsonl",
                gen_antonym(rng, 500, 251, sample_first=True))
    write_jsonl(olm / "antonym_negation_train.jsonl",
                gen_antonym(rng, 500, 250))
    an_pools = always_never_pools(rng)
    an_used = {k: 0 for k in an_pools}
    write_jsonl(olm / "always_never_dev.jsonl",
                gen_always_never(rng, 1158, [418, 120, 250, 160, 210],
                                 an_pools, an_used))
    write_jsonl(olm / "always_never_train.jsonl",
                gen_always_never(rng, 1000, [360, 110, 220, 140, 170],
                                 an_pools, an_used))
    tax_pool = conjunction_pool(rng, TAXONOMY_FAMILIES)
    tax_cursor = [0]
    write_jsonl(olm / "taxonomy_conjunction_dev.jsonl",
                conjunction_rows(rng, tax_pool, 570,
                                 [194, 188, 188], "tax", tax_cursor))
    write_jsonl(olm / "taxonomy_conjunction_train.jsonl",
                conjunction_rows(rng, tax_pool, 200,
                                 [67, 67, 66], "tax", tax_cursor))
    mh_seen = set()
    write_jsonl(olm / "multihop_composition_dev.jsonl",
                gen_multihop(rng, 500, [170, 165, 165], mh_seen))
    write_jsonl(olm / "multihop_composition_train.jsonl",
                gen_multihop(rng, 2000, [667, 667, 666], mh_seen))
    hyp_pool = conjunction_pool(rng, HYPERNYM_FAMILIES)
    hyp_cursor = [0]
    write_jsonl(olm / "hypernym_conjunction_dev.jsonl",
                conjunction_rows(rng, hyp_pool, 150,
                                 [51, 50, 49], "hyp", hyp_cursor))
    write_jsonl(olm / "hypernym_conjunction_train.jsonl",
                conjunction_rows(rng, hyp_pool, 150,
                                 [50, 50, 50], "hyp", hyp_cursor))
    write_jsonl(olm / "property_conjunction_dev.jsonl",
                gen_property(rng, 150, [51, 50, 49]))
    write_jsonl(olm / "property_conjunction_train.jsonl",
                gen_property(rng, 150, [50, 50, 50]))
    enc_people = people_pool(rng)
    enc_cursor = [0]
    write_jsonl(olm / "encyclopedic_composition_dev.jsonl",
                gen_encyclopedic(rng, 150, [51, 50, 49], enc_people,
                                 enc_cursor))
    write_jsonl(olm / "encyclopedic_composition_train.jsonl",
                gen_encyclopedic(rng, 150, [50, 50, 50], enc_people,
                                 enc_cursor))

    gen_psych(out)
    gen_corpus(rng, out)


if __name__ == "__main__":
    main()
