from rest_framework import serializers


def _check_label(label):
    if not label or any(ch.isspace() for ch in label) or "<" in label or label.startswith("#"):
        raise serializers.ValidationError(f"Invalid element label: {label!r}")


class PosetDocumentSerializer(serializers.Serializer):
    """JSON mirror of the poset text format: name, elements, covers, metadata."""

    name = serializers.CharField(required=False, allow_blank=True, default="")
    elements = serializers.ListField(child=serializers.CharField(trim_whitespace=False), allow_empty=True)
    covers = serializers.ListField(
        child=serializers.ListField(child=serializers.CharField(trim_whitespace=False), min_length=2, max_length=2),
        required=False,
        default=list,
    )
    metadata = serializers.DictField(
        child=serializers.CharField(allow_blank=True), required=False, default=dict
    )

    def validate_elements(self, value):
        seen = set()
        for label in value:
            _check_label(label)
            if label in seen:
                raise serializers.ValidationError(f"Duplicate element label: {label!r}")
            seen.add(label)
        return value

    def validate(self, attrs):
        known = set(attrs["elements"])
        for low, high in attrs.get("covers", []):
            for label in (low, high):
                if label not in known:
                    raise serializers.ValidationError({"covers": f"Unknown element: {label!r}"})
        return attrs
