#include "shsim/annotation.hpp"

namespace shsim::annotation {

const Taxonomy& cialdini() {
    static const Taxonomy t{
        "cialdini",
        {
            {"Reciprocation",
             "Encourage compliance by reminding players of past support or favors - votes, "
             "defenses, or information - that create an obligation to reciprocate"},
            {"Social Validation",
             "Increase acceptance by pointing to majority support or the choices of trusted, "
             "confirmed players"},
            {"Consistency",
             "Persuade by reminding players of their own stated principles, previous votes, or "
             "claims, nudging them to stay consistent"},
            {"Friendship/Liking",
             "Boost agreement by appealing to rapport, trust, or positive past interactions"},
            {"Scarcity",
             "Drive compliance by stressing the urgency of rare opportunities or the risks of "
             "delaying action"},
            {"Authority",
             "Gain compliance by invoking credibility from a proven track record, demonstrated "
             "competence, or table-confirmed results"},
        }};
    return t;
}

const Taxonomy& jailbreak() {
    static const Taxonomy t{
        "jailbreak",
        {
            {"Evidence-based Persuasion",
             "Using empirical data, statistics, and facts to support a claim or decision"},
            {"Logical Appeal",
             "Using logic, reasoning, logical format, etc. to influence people, not necessarily "
             "with lots of information"},
            {"Expert Endorsement", "Citing domain experts in support of a claim"},
            {"Non-expert Testimonial",
             "Using personal statements to support a claim or argument"},
            {"Authority Endorsement",
             "Citing authoritative sources (not domain experts, but trustworthy sources like "
             "major media outlets, etc) in support of a claim"},
            {"Social Proof",
             "Highlighting what the majority is doing or believes in, assuming it's accurate "
             "and beneficial"},
            {"Injunctive Norm",
             "Highlighting what the society or important reference groups (e.g., families, "
             "friends, communities) expect the individual to do to influence them to do "
             "something"},
            {"Foot-in-the-door", "Starting with a small request to pave the way for a larger one"},
            {"Door-in-the-face",
             "Beginning with a larger request followed by a smaller, and more reasonable one"},
            {"Public Commitment",
             "Getting someone to state or write down a commitment in a public setting"},
            {"Alliance Building",
             "Creating partnerships, coalitions, relationships, rapport, etc, with others to "
             "amplify influence"},
            {"Complimenting",
             "Saying positive things about others to increase liking and influence"},
            {"Shared Values",
             "Highlighting shared beliefs and values to foster a connection"},
            {"Relationship Leverage", "Reminding someone of past positive interactions"},
            {"Loyalty Appeals", "Highlighting shared history or commitment"},
            {"Favor",
             "Doing something for someone with the hope that they will do something for you in "
             "return"},
            {"Negotiation",
             "Trade favors or resources or reach a mutually beneficial agreement"},
            {"Encouragement",
             "Encourage others to increase their confidence and self-efficacy to influence them "
             "to do something"},
            {"Affirmation",
             "Help others to realize their strength to reinforce and influence their ability to "
             "do things"},
            {"Positive Emotion Appeal",
             "Eliciting positive emotions like empathy, hope, passion, etc., and positive "
             "results/outcomes to persuade someone"},
            {"Negative Emotion Appeal",
             "Using negative emotions such as guilt, fear, anger, etc., and negative "
             "consequences to persuade someone to adopt a position or behavior"},
            {"Storytelling",
             "Sharing personal or impactful stories that resonate emotionally"},
            {"Anchoring",
             "Relying on the first piece of information as a reference point to influence, "
             "persuade, or negotiate with others"},
            {"Priming",
             "Relying on small cues, and stimuli like words or images to influence others' "
             "attitudes, thoughts, behaviors, and actions (subtle, often unconscious, "
             "activation of certain thoughts or behaviors)"},
            {"Framing",
             "Presenting information in a way that emphasizes either its positive or negative "
             "aspects, outcomes, expectations, etc."},
            {"Confirmation Bias", "Presenting information that confirms existing beliefs"},
            {"Reciprocity", "Adapt to the individual's arguments or linguistic styles"},
            {"Compensation",
             "A form of communication adaption where the influencer tries to compensate for "
             "what a person states"},
            {"Supply Scarcity", "Creating a sense of shortage to increase demand or pressure"},
            {"Time Pressure",
             "Giving limited time for a decision, thereby pressuring someone to make a choice"},
            {"Reflective Thinking",
             "Helping others to reflect on their own reasons to do things or not do things, to "
             "influence them"},
            {"Threats", "Using threats or negative consequences to influence someone's behavior"},
            {"False Promises",
             "Offering rewards or positive outcomes that will never be delivered"},
            {"Misrepresentation",
             "Presenting oneself or an issue in a way that's not genuine or true"},
            {"False Information",
             "Providing disinformation/misinformation to influence people"},
            {"Rumors",
             "Spreading false information or stories about someone to tarnish their reputation "
             "to influence them to do something"},
            {"Social Punishment",
             "Forcing someone to conform through group pressure, even if it's against their "
             "will"},
            {"Creating Dependency",
             "Making someone reliant on you so they're easier to control"},
            {"Exploiting Weakness",
             "Taking advantage of someone's vulnerabilities or insecurities"},
            {"Discouragement",
             "Discourage others to decrease their confidence to influence them to do something"},
        }};
    return t;
}

const Taxonomy& among_us() {
    static const Taxonomy t{
        "among_us",
        {
            {"Appeal to Logic",
             "Using facts, evidence, or logical reasoning to convince others by suggesting a "
             "careful, methodical approach to decision-making"},
            {"Appeal to Emotion",
             "Persuading by evoking an emotional response, such as fear, sympathy, or trust"},
            {"Appeal to Credibility",
             "Convincing others based on the trustworthiness or authority of the speaker"},
            {"Shifting the Burden of Proof",
             "Forcing others to prove their innocence instead of presenting clear evidence of "
             "guilt"},
            {"Bandwagon Effect",
             "Convincing others to agree by emphasizing that everyone else is already on board "
             "with the idea"},
            {"Distraction",
             "Diverting attention away from oneself or from the actual issue to avoid "
             "suspicion"},
            {"Gaslighting",
             "Convincing others to doubt their own perceptions and reality, making them "
             "question what they saw or did"},
            {"Appeal to Urgency",
             "Urging the group to take immediate action, invoking a sense of urgency"},
            {"Deception", "Deliberately providing false information to mislead others"},
            {"Lying", "Stating falsehoods"},
            {"Feigning Ignorance",
             "Pretending to lack knowledge about a situation to avoid suspicion or "
             "responsibility"},
            {"Vagueness",
             "Avoiding specific details when under scrutiny to prevent others from disproving "
             "or questioning one's statements"},
            {"Minimization",
             "Downplaying the significance of an event or one's involvement in it"},
            {"Self-Deprecation",
             "Downplaying one's abilities or role to appear less threatening or suspicious"},
            {"Projection",
             "Accusing others of the very faults or actions one is guilty of to deflect blame"},
            {"Appeal to Relationship",
             "Leveraging past alliances, friendships, or flattery to build trust and avoid "
             "suspicion"},
            {"Humor",
             "Using humor to deflect accusations or lighten the mood, making others less "
             "likely to suspect"},
            {"Sarcasm", "Using sarcastic remarks to dismiss accusations or undermine others"},
            {"Withholding Information",
             "Deliberately not sharing information that could be relevant to the discussion"},
            {"Exaggeration",
             "Overstating facts or events to make a point more convincing or to cast doubt on "
             "others"},
            {"Denial without Evidence",
             "Flatly denying accusations without providing evidence to the contrary"},
            {"Strategic Voting Suggestion",
             "Proposing specific voting strategies to influence the game's outcome"},
            {"Appeal to Rules",
             "Referencing game mechanics or rules to support one's innocence"},
            {"Confirmation Bias Exploitation",
             "Aligning arguments with others' existing beliefs to persuade them more "
             "effectively"},
            {"Information Overload",
             "Providing excessive details to confuse others and prevent them from identifying "
             "inconsistencies"},
        }};
    return t;
}

const Taxonomy* find_builtin(const std::string& name) {
    if (name == "cialdini") return &cialdini();
    if (name == "jailbreak") return &jailbreak();
    if (name == "among_us") return &among_us();
    return nullptr;
}

} // namespace shsim::annotation
