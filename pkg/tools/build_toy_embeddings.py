"""Regenerate the bundled toy embedding file and seed-object list.

Words are grouped by topic; each topic gets a random centre in a 50-d space
and each word is its topic centre plus isotropic noise, so cosine neighbours
are mostly topic mates. Eight non-ASCII words are included to exercise the
ASCII filter. The file has exactly 1000 lines.
"""
import sys

import numpy as np

DIM = 50
SEED = 20230715
N_LINES = 1000

TOPICS = {
    "kitchen": "toaster kettle blender spatula ladle whisk colander skillet saucepan oven microwave fridge freezer grater peeler tongs cutlery apron dishwasher stove mixer strainer cookbook timer funnel",
    "bathroom": "toothbrush toothpaste shampoo soap towel bathtub shower sink faucet mirror razor comb hairbrush lotion sponge loofah mouthwash floss washcloth plunger bathmat conditioner deodorant tissue cotton",
    "office": "notebook stapler printer scanner folder binder clipboard calendar envelope letterhead paperclip desk chair cabinet shredder whiteboard projector laminator keyboard monitor inkjet cartridge stamp invoice memo",
    "stationery": "pencil pen eraser sharpener marker highlighter crayon ruler protractor compass scissors glue tape notepad sketchbook chalk ink quill journal diary postcard sticker bookmark stencil easel",
    "furniture": "sofa couch armchair recliner ottoman bookshelf dresser wardrobe nightstand sideboard bench stool table loveseat futon cupboard hutch credenza footstool rocker chaise divan cabinetry bookcase vanity",
    "clothing": "shirt jacket sweater hoodie trousers jeans skirt dress blouse coat vest scarf gloves mittens cardigan pajamas overalls tuxedo kimono poncho raincoat parka tunic leggings shorts",
    "footwear": "sneakers boots sandals slippers loafers heels clogs moccasins flipflops oxfords brogues galoshes espadrilles mules wedges pumps stilettos trainers cleats waders insoles shoelaces footbed outsole bootlaces",
    "fruit": "apple banana orange grape mango pineapple strawberry blueberry raspberry cherry peach pear plum apricot kiwi lemon lime melon watermelon papaya coconut fig pomegranate grapefruit nectarine",
    "vegetables": "carrot potato onion garlic tomato cucumber lettuce spinach broccoli cauliflower cabbage celery pepper zucchini eggplant radish turnip beetroot asparagus artichoke leek kale pumpkin squash parsnip",
    "beverages": "coffee tea espresso latte cappuccino cocoa lemonade soda juice smoothie milkshake cider beer wine whiskey vodka rum gin champagne kombucha water tonic cola mocha chai",
    "tools": "hammer screwdriver wrench pliers saw drill chisel sander clamp level crowbar mallet hacksaw toolbox screws nails bolts anvil trowel shovel rake hoe axe hatchet sledgehammer",
    "vehicles": "car truck bus bicycle motorcycle scooter van tractor trailer ambulance taxi tram train subway locomotive airplane helicopter boat ferry yacht canoe kayak sailboat submarine jeep",
    "electronics": "laptop tablet smartphone camera headphones speaker television radio router modem charger battery console remote earbuds smartwatch thermostat drone calculator webcam microphone amplifier turntable keypad joystick",
    "instruments": "guitar piano violin cello flute clarinet trumpet trombone saxophone drums harp banjo ukulele mandolin accordion harmonica xylophone tambourine oboe bassoon tuba cymbals bagpipes sitar marimba",
    "sports": "football basketball baseball tennis golf hockey racket helmet skateboard snowboard skis surfboard dumbbell barbell treadmill frisbee volleyball softball badminton shuttlecock puck paddle javelin discus hurdles",
    "toys": "doll teddy puzzle kite yoyo marbles blocks lego rattle pinwheel slinky robot dollhouse playdough whistle balloon spinner tricycle sandbox seesaw dominoes trampoline bubbles pogo figurine",
    "pets": "dog cat puppy kitten hamster rabbit parrot goldfish guinea ferret tortoise gerbil budgie canary chinchilla lizard iguana terrier poodle beagle bulldog spaniel retriever collie tabby",
    "birds": "sparrow robin eagle hawk falcon owl pigeon dove crow raven swan goose duck heron pelican flamingo penguin seagull woodpecker hummingbird kingfisher starling finch wren albatross",
    "trees": "oak maple pine birch willow cedar spruce elm ash beech cypress redwood sequoia sycamore poplar chestnut walnut hickory magnolia juniper hemlock alder larch acacia baobab",
    "weather": "rain snow hail sleet fog mist drizzle thunder lightning storm hurricane tornado cyclone blizzard breeze gust drought heatwave monsoon frost dew humidity overcast sunshine rainbow umbrella cloud windstorm",
    "jewelry": "necklace bracelet ring earrings pendant brooch locket anklet tiara crown bangle cufflinks choker amulet charm medallion earring tiepin circlet diadem signet hairpin armlet nosering chain",
    "containers": "box jar bottle can bucket basket crate barrel bin bag sack pouch carton tin canister flask jug vase urn trunk chest suitcase backpack tote thermos",
    "bedroom": "bed pillow blanket mattress duvet quilt sheets pillowcase headboard bedspread comforter nightlight alarm lamp curtains blinds rug hamper hanger closet cushion bunk crib cot hammock",
    "garden": "lawnmower hose sprinkler wheelbarrow watering fertilizer compost mulch seeds planter greenhouse trellis fence gnome birdbath birdhouse shears pruner weeder gazebo patio hedge pergola lawn flowerbed",
    "camping": "tent sleepingbag lantern flashlight campfire compass2 map binoculars canteen knapsack hiking trail cooler firewood matches tarp stakes poles hammock2 raft rope carabiner headlamp bivouac campsite",
    "medical": "bandage stethoscope thermometer syringe needle pill tablet2 capsule ointment gauze splint crutches wheelchair stretcher scalpel tweezers inhaler vaccine antibiotic aspirin plaster sling bandaid defibrillator catheter",
    "bakery": "bread baguette croissant muffin cupcake cookie biscuit pastry donut bagel pretzel scone brownie cake pie tart waffle pancake crumpet strudel eclair macaron loaf roll brioche",
    "dairy": "milk cheese butter yogurt cream custard ghee kefir cheddar mozzarella parmesan brie gouda feta ricotta buttermilk curd whey camembert gruyere mascarpone provolone halloumi paneer quark",
    "spices": "salt pepper2 cinnamon nutmeg cumin paprika turmeric ginger clove cardamom saffron oregano basil thyme rosemary sage parsley dill coriander vanilla anise fennel mustard chili tarragon",
    "fabrics": "silk wool linen denim velvet satin polyester nylon cashmere corduroy flannel tweed chiffon lace suede leather fleece jersey muslin canvas gingham taffeta calico burlap felt",
    "materials": "brick concrete cement timber plywood steel iron copper aluminum glass marble granite slate limestone sandstone clay tile mortar asphalt gravel plasterboard drywall insulation lumber stucco",
    "cleaning": "broom mop vacuum duster detergent bleach disinfectant scrubber dustpan squeegee polish wipes cloth rag brush soapsuds cleanser softener starch lint bucket2 gloves2 spray sanitizer degreaser",
    "school": "classroom blackboard textbook backpack2 lunchbox locker homework quiz exam diploma uniform satchel globe atlas dictionary encyclopedia worksheet lecture semester syllabus gradebook timetable playground cafeteria library",
    "cosmetics": "lipstick mascara eyeliner foundation blush concealer powder perfume cologne nailpolish moisturizer sunscreen serum primer bronzer eyeshadow lipgloss toner cleanser2 makeup rouge highlighter2 tweezer2 palette",
    "sea": "salmon tuna cod trout shrimp lobster crab oyster mussel clam squid octopus sardine anchovy mackerel halibut herring scallop jellyfish starfish seahorse dolphin whale shark stingray",
    "insects": "ant bee wasp hornet beetle butterfly moth dragonfly grasshopper cricket ladybug mosquito fly termite cockroach firefly caterpillar cicada mantis aphid flea tick weevil earwig locust",
    "games": "chess checkers backgammon poker bingo scrabble monopoly cards dice roulette mahjong solitaire crossword sudoku charades trivia darts billiards bowling pinball arcade jigsaw riddle lottery tombola",
    "flowers": "rose tulip daisy lily orchid sunflower daffodil violet lavender jasmine carnation peony marigold iris poppy hibiscus dahlia begonia chrysanthemum geranium petunia azalea lotus primrose camellia",
    "gems": "diamond ruby sapphire emerald amethyst topaz opal pearl garnet jade onyx quartz turquoise agate amber coral jasper citrine peridot tanzanite zircon obsidian malachite moonstone lapis",
    "tableware": "plate bowl cup mug saucer spoon fork knife chopsticks platter teapot pitcher tumbler goblet napkin tray ramekin tureen coaster placemat tablecloth gravyboat butterdish saltshaker teacup",
}

NON_ASCII = {
    "beverages": ["café", "crème"],
    "vegetables": ["jalapeño"],
    "toys": ["piñata"],
    "office": ["résumé"],
    "materials": ["façade"],
    "school": ["naïve"],
    "bakery": ["crêpe"],
}

SEEDS_PER_TOPIC = 2
EXTRA_SEEDS = ["toothbrush", "coffee", "notebook", "umbrella", "lamp", "kettle", "guitar",
               "bicycle", "camera", "pillow", "hammer", "apple", "tent", "chess", "rose",
               "salmon", "diamond", "plate", "bread", "cheese"]


def main(out_vectors, out_seeds):
    rng = np.random.default_rng(SEED)
    words = []
    topic_of = {}
    for topic, text in TOPICS.items():
        for w in text.split():
            w = w.rstrip("0123456789")
            if w in topic_of:
                continue
            topic_of[w] = topic
            words.append(w)
    non_ascii = [(w, t) for t, ws in NON_ASCII.items() for w in ws]
    n_ascii = N_LINES - len(non_ascii)
    if len(words) < n_ascii:
        raise SystemExit(f"need {n_ascii} ascii words, have {len(words)}")
    words = words[:n_ascii]
    centres = {t: rng.normal(size=DIM) for t in TOPICS}
    lines = []
    entries = [(w, topic_of[w]) for w in words] + non_ascii
    for w, topic in entries:
        vec = centres[topic] + 0.75 * rng.normal(size=DIM)
        lines.append(w + " " + " ".join(f"{v:.5f}" for v in vec))
    with open(out_vectors, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")

    present = set(words)
    seeds = []
    for topic in TOPICS:
        members = [w for w in words if topic_of[w] == topic]
        for w in members[:SEEDS_PER_TOPIC]:
            if w not in seeds:
                seeds.append(w)
    for w in EXTRA_SEEDS:
        if w in present and w not in seeds:
            seeds.append(w)
    for w in words:
        if len(seeds) >= 100:
            break
        if w not in seeds:
            seeds.append(w)
    with open(out_seeds, "w", encoding="utf-8") as fh:
        fh.write("\n".join(seeds[:100]) + "\n")


if __name__ == "__main__":
    main(*(sys.argv[1:3] if len(sys.argv) > 2 else
           ("src/genplot/data/toy_embeddings.txt", "src/genplot/data/seeds.txt")))
